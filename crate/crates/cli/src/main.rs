use clap::Parser;

fn main() {
    let cli = match qspecies_cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(e.exit_code());
        }
    };
    if let Err(e) = qspecies_cli::run(&cli) {
        eprintln!("qspecies: {e}");
        std::process::exit(e.exit_code());
    }
}
