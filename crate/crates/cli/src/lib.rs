//! The `qspecies` command-line front end.
//!
//! Every subcommand builds an [`ExperimentRecord`] and renders it as text,
//! JSON or CSV. Exit codes: 0 success, 2 usage error, 3 infeasible or
//! out-of-domain input, 4 capacity exceeded, 1 I/O failure.

pub mod amplitudes;
pub mod commands;
pub mod record;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qspecies::Tolerances;
use serde::Serialize;

pub use commands::CommandOutput;
pub use record::{ExperimentRecord, Table};

/// Environment variable naming the default directory for json/csv output.
pub const OUTPUT_DIR_ENV: &str = "QSPECIES_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "qspecies", version, about = "Replication, culling and mutation experiments on quantum species states")]
pub struct Cli {
    /// Seed for randomized subcommands. Required with --format json|csv.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Override a tolerance, e.g. `--tol gram=1e-8`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count real equations and unknowns for a universal replicator.
    WignerCount(WignerArgs),
    /// Apply the basis cloner to a state and measure the gap to an ideal clone.
    CloneDemo(CloneArgs),
    /// Build the optimal probabilistic cloner for two states and sample it.
    ProbClone(ProbArgs),
    /// Apply the basis culler to a state and measure the gap to ideal deletion.
    CullDemo(CullArgs),
    /// Sweep the mutation overlap over copy counts.
    ParadoxSweep(SweepArgs),
    /// Test the unitarity demand of entangling a species with its mutant.
    CheckEntangling(EntangleArgs),
    /// Decide ancilla-assisted clonability of a state family from a JSON file.
    JozsaCheck(JozsaArgs),
    /// Clone fidelity along a periodic evolution.
    CyclicDemo(CyclicArgs),
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Inclusive grid `NLO:NHI,RLO:RHI`.
    #[arg(long)]
    pub grid: Option<String>,
}

/// How the input state is chosen. Default: the uniform superposition.
#[derive(Debug, Args)]
pub struct StateArgs {
    /// Amplitudes, e.g. `0.6,0.8j` or `0.5+0.5j,0.5-0.5j`.
    #[arg(long, conflicts_with_all = ["random", "basis"])]
    pub psi: Option<String>,
    /// Haar-random state (uses --seed).
    #[arg(long, conflicts_with = "basis")]
    pub random: bool,
    /// Computational basis state `|k⟩`.
    #[arg(long)]
    pub basis: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RejectedSpec {
    /// Every basis state leaves the same rejected state.
    Shared,
    /// Basis state `k` leaves `|k⟩`.
    Orthogonal,
}

#[derive(Debug, Args)]
pub struct CloneArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = RejectedSpec::Shared)]
    pub rejected: RejectedSpec,
    /// Rejected state of the ideal clone: `index:K` or `best`.
    #[arg(long, default_value = "index:0")]
    pub reference: String,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    /// Overlap magnitude of the two input states, in [0, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlankSpec {
    /// `w_k = |0⟩` for every k.
    Shared,
    /// `w_k = |k⟩`.
    Orthogonal,
}

#[derive(Debug, Args)]
pub struct CullArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = BlankSpec::Shared)]
    pub blanks: BlankSpec,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `|⟨ψ|U|ψ⟩|²`, in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub s2: f64,
    /// Comma-separated copy counts.
    #[arg(long)]
    pub m: Option<String>,
    /// Inclusive range `LO:HI`, doubling unless --step is given. Default 1:1024.
    #[arg(long)]
    pub m_range: Option<String>,
    #[arg(long, requires = "m_range")]
    pub step: Option<u64>,
    /// Skip the tensor-product oracle column.
    #[arg(long)]
    pub no_oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntangleMode {
    Random,
    QubitExample,
}

#[derive(Debug, Args)]
pub struct EntangleArgs {
    #[arg(value_enum)]
    pub mode: EntangleMode,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// `⟨0|U|0⟩` for qubit-example.
    #[arg(long, default_value = "0.7071067811865476", allow_hyphen_values = true)]
    pub a: String,
    /// `⟨1|U|0⟩` for qubit-example.
    #[arg(long, default_value = "0.7071067811865476", allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct JozsaArgs {
    /// JSON file `{"states": [...], "ancillas": [...]}`; each state is an
    /// amplitude string or a list of `[re, im]` pairs.
    #[arg(long)]
    pub states: PathBuf,
}

#[derive(Debug, Args)]
pub struct CyclicArgs {
    #[arg(long, default_value_t = 8)]
    pub steps: u64,
    /// Initial basis state.
    #[arg(long, default_value_t = 0)]
    pub basis: usize,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tolerances: Tolerances,
    pub tol_overrides: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: None,
            format: Format::Text,
            output: None,
            tolerances: Tolerances::default(),
            tol_overrides: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut tolerances = Tolerances::default();
        let mut tol_overrides = BTreeMap::new();
        for spec in &cli.tol {
            let (name, value) = spec
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("malformed --tol `{spec}`; expected NAME=VALUE")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("malformed tolerance value in `{spec}`")))?;
            tolerances
                .set(name.trim(), value)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            tol_overrides.insert(name.trim().to_string(), value);
        }
        Ok(Self {
            seed: cli.seed,
            format: cli.format,
            output: cli.output.clone(),
            tolerances,
            tol_overrides,
        })
    }

    /// The seed for a randomized step; machine-readable output must name one explicitly.
    pub fn require_seed(&self, what: &str) -> Result<u64, CliError> {
        match (self.seed, self.format) {
            (Some(s), _) => Ok(s),
            (None, Format::Text) => Ok(0),
            (None, _) => Err(CliError::Usage(format!(
                "{what} is randomized: pass --seed with --format json or csv"
            ))),
        }
    }

    /// Where the rendered output goes; `None` means stdout.
    pub fn destination(&self, subcommand: &str) -> Option<PathBuf> {
        let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
        match (&self.output, dir) {
            (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(d)) if self.format != Format::Text => {
                Some(d.join(format!("{subcommand}.{}", self.format.extension())))
            }
            (None, _) => None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(qspecies::Error),
    Io(String),
}

impl From<qspecies::Error> for CliError {
    fn from(e: qspecies::Error) -> Self {
        CliError::Library(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qspecies::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Library(e) => match e {
                E::Dimension(_) | E::Argument(_) | E::NotNormalized(_) | E::NotUnitary(_) | E::InvalidDensity(_) => 2,
                E::Infeasible(_) | E::Domain(_) | E::DegenerateInput(_) | E::Isometry(_) => 3,
                E::Capacity { .. } => 4,
            },
        }
    }
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match command {
        Command::WignerCount(a) => commands::cmd_wigner_count(a, cfg),
        Command::CloneDemo(a) => commands::cmd_clone_demo(a, cfg),
        Command::ProbClone(a) => commands::cmd_prob_clone(a, cfg),
        Command::CullDemo(a) => commands::cmd_cull_demo(a, cfg),
        Command::ParadoxSweep(a) => commands::cmd_paradox_sweep(a, cfg),
        Command::CheckEntangling(a) => commands::cmd_check_entangling(a, cfg),
        Command::JozsaCheck(a) => commands::cmd_jozsa_check(a, cfg),
        Command::CyclicDemo(a) => commands::cmd_cyclic_demo(a, cfg),
    }
}

pub fn render(out: &CommandOutput, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(out.text.clone()),
        Format::Json => serde_json::to_string_pretty(&out.record)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Io(e.to_string())),
        Format::Csv => out.table.to_csv().map_err(CliError::Io),
    }
}

/// Runs a parsed command line: dispatches, renders and writes. Warnings go
/// to stderr.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let out = dispatch(&cli.command, &cfg)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let rendered = render(&out, cfg.format)?;
    match cfg.destination(&out.record.subcommand) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(&path, rendered).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
