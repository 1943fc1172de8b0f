use std::path::Path;
use std::process::{Command, Output};

use qspecies_cli::ExperimentRecord;
use serde_json::Value;

fn qspecies(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspecies"))
        .args(args)
        .env_remove(qspecies_cli::OUTPUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = qspecies(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qspecies(args).status.code().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn write_family(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn wigner_examples() {
    let r = json(&["wigner-count", "--n", "3", "--r", "2"]);
    assert_eq!(r["results"][0]["deficit"], 14);
    let r = json(&["wigner-count", "--n", "1", "--r", "1"]);
    assert_eq!(r["results"][0]["deficit"], -4);
    let r = json(&["wigner-count", "--grid", "2:5,1:3"]);
    assert_eq!(r["results"].as_array().unwrap().len(), 12);
    let csv = qspecies(&["wigner-count", "--grid", "2:5,1:3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 13);
    assert_eq!(code(&["wigner-count", "--n", "0", "--r", "1"]), 2);
    assert_eq!(code(&["wigner-count", "--n", "-1", "--r", "1"]), 2);
    assert_eq!(code(&["wigner-count", "--n", "3"]), 2);
}

#[test]
fn clone_demo_examples() {
    let r = json(&["clone-demo"]);
    assert!((f(&r["results"]["report"]["fidelity"]) - 0.5).abs() < 1e-10);
    let r = json(&["clone-demo", "--basis", "1"]);
    assert!((f(&r["results"]["report"]["fidelity"]) - 1.0).abs() < 1e-10);
    let a = json(&["clone-demo", "--random", "--seed", "7", "--dim", "3"]);
    let b = json(&["clone-demo", "--random", "--seed", "7", "--dim", "3"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(code(&["clone-demo", "--psi", "1,x"]), 2);
    assert_eq!(code(&["--format", "json", "clone-demo", "--random"]), 2);
    assert_eq!(code(&["clone-demo", "--basis", "0", "--dim", "2000"]), 4);
}

#[test]
fn unnormalized_state_warns() {
    let out = qspecies(&["clone-demo", "--psi", "1,1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalizing"));
    let out = qspecies(&["clone-demo", "--psi", "0.6,0.8j"]);
    assert!(out.stderr.is_empty());
}

#[test]
fn prob_clone_examples() {
    let r = json(&["prob-clone", "--s", "0.5", "--seed", "1", "--trials", "20000"]);
    assert!((f(&r["results"]["search"]["p_max"]) - 2.0 / 3.0).abs() < 1e-6);
    assert!((f(&r["results"]["search"]["bound"]) - 2.0 / 3.0).abs() < 1e-12);
    let r = json(&["prob-clone", "--s", "0", "--seed", "1", "--trials", "1000"]);
    assert_eq!(f(&r["results"]["search"]["p_max"]), 1.0);
    assert_eq!(f(&r["results"]["samples"][0]["rate"]), 1.0);
    let r = json(&["prob-clone", "--s", "0.9", "--seed", "4"]);
    let p = f(&r["results"]["search"]["p_max"]);
    let sigma = (p * (1.0 - p) / 1e5).sqrt();
    for k in 0..2 {
        assert!((f(&r["results"]["samples"][k]["rate"]) - p).abs() <= 3.0 * sigma);
    }
    assert_eq!(code(&["prob-clone", "--s", "1"]), 2);
    assert_eq!(code(&["prob-clone", "--s", "-0.1"]), 2);
}

#[test]
fn cull_demo_examples() {
    let r = json(&["cull-demo"]);
    assert!((f(&r["results"]["report"]["fidelity_vs_ideal"]) - 0.5).abs() < 1e-10);
    let r = json(&["cull-demo", "--basis", "0"]);
    assert!((f(&r["results"]["report"]["fidelity_vs_ideal"]) - 1.0).abs() < 1e-10);
    assert!(f(&r["results"]["report"]["recovery_error"]) < 1e-10);
    assert_eq!(r["results"]["recovered"], true);
    let text = String::from_utf8(qspecies(&["cull-demo"]).stdout).unwrap();
    assert!(text.contains("recovery"));
}

#[test]
fn paradox_sweep_examples() {
    let r = json(&["paradox-sweep", "--s2", "0.5"]);
    let rows = r["results"].as_array().unwrap();
    assert_eq!(rows.first().unwrap()["M"], 1);
    assert_eq!(rows.last().unwrap()["M"], 1024);
    assert!(f(&rows.last().unwrap()["overlap_entangled"]) >= 0.999);
    let r = json(&["paradox-sweep", "--s2", "0", "--m-range", "1:50", "--step", "7"]);
    assert!(r["results"].as_array().unwrap().iter().all(|x| f(&x["overlap_entangled"]) == 0.0));
    let r = json(&["paradox-sweep", "--s2", "0.5", "--m", "2"]);
    assert!(f(&r["results"][0]["oracle_agreement"]) < 1e-10);
    let csv = String::from_utf8(qspecies(&["paradox-sweep", "--s2", "0.5", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("M,s2,overlap_entangled,overlap_unentangled,ratio"));
    assert!(!csv.contains('\r'));
    assert_eq!(code(&["paradox-sweep", "--s2", "1.5"]), 2);
    assert_eq!(code(&["paradox-sweep", "--s2", "0.5", "--m", "4,2"]), 2);
}

#[test]
fn check_entangling_examples() {
    let r = json(&["check-entangling", "qubit-example"]);
    assert!((f(&r["results"]["residual"]["cross_term"][0]) + 0.5).abs() < 1e-12);
    let r = json(&["check-entangling", "qubit-example", "--a", "1", "--b", "0"]);
    assert_eq!(f(&r["results"]["residual"]["residual"]), 0.0);
    let r = json(&["check-entangling", "random", "--seed", "5"]);
    assert!(f(&r["results"]["exceed_fraction"]) >= 0.99);
    assert_eq!(code(&["check-entangling", "qubit-example", "--a", "1", "--b", "1"]), 2);
    assert_eq!(code(&["--format", "csv", "check-entangling", "random"]), 2);
}

#[test]
fn jozsa_check_files() {
    let dir = tempfile::tempdir().unwrap();
    let same = write_family(
        dir.path(),
        "same.json",
        r#"{"states": ["1,0", "0.6,0.8"], "ancillas": ["1,0", [[0.6, 0.0], [0.8, 0.0]]]}"#,
    );
    let r = json(&["jozsa-check", "--states", &same]);
    assert_eq!(r["results"]["feasible"], true);
    assert_eq!(f(&r["results"]["max_residual"]), 0.0);

    let constant = write_family(
        dir.path(),
        "constant.json",
        r#"{"states": ["1,0", "0.6,0.8"], "ancillas": ["1,0", "1,0"]}"#,
    );
    let r = json(&["jozsa-check", "--states", &constant]);
    assert_eq!(r["results"]["feasible"], false);
    assert_eq!(r["results"]["residuals"].as_array().unwrap().len(), 2);

    let mismatched = write_family(dir.path(), "mismatch.json", r#"{"states": ["1,0", "0.6,0.8"], "ancillas": ["1,0"]}"#);
    assert_eq!(code(&["jozsa-check", "--states", &mismatched]), 2);
    let orth = write_family(dir.path(), "orth.json", r#"{"states": ["1,0", "0,1"], "ancillas": ["1,0", "0,1"]}"#);
    let out = qspecies(&["jozsa-check", "--states", &orth]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthogonal"));
    let broken = write_family(dir.path(), "broken.json", "{not json");
    assert_eq!(code(&["jozsa-check", "--states", &broken]), 2);
    assert_eq!(code(&["jozsa-check", "--states", "/nonexistent/family.json"]), 2);
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["paradox-sweep", "--s2", "0.3", "--m", "1,2,3"],
        vec!["prob-clone", "--s", "0.4", "--seed", "2", "--trials", "100"],
        vec!["check-entangling", "random", "--seed", "1", "--trials", "10"],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend(args);
        let raw = String::from_utf8(qspecies(&full).stdout).unwrap();
        let rec: ExperimentRecord = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", raw);
    }
}

#[test]
fn tolerance_overrides() {
    let r = json(&["--tol", "gram=1e-6", "cyclic-demo", "--steps", "4"]);
    assert_eq!(f(&r["params"]["tolerances"]["gram"]), 1e-6);
    assert_eq!(code(&["--tol", "bogus=1", "cyclic-demo"]), 2);
    assert_eq!(code(&["--tol", "gram", "cyclic-demo"]), 2);
}

#[test]
fn output_locations() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_qspecies"))
        .args(["--format", "csv", "wigner-count", "--n", "2", "--r", "2"])
        .env(qspecies_cli::OUTPUT_DIR_ENV, dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.path().join("wigner-count.csv")).unwrap();
    assert!(written.starts_with("N,R,equations,unknowns,deficit\n2,2,16,16,0"));

    let explicit = dir.path().join("nested/out.json");
    let out = qspecies(&["--format", "json", "--output", explicit.to_str().unwrap(), "cyclic-demo"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let rec: ExperimentRecord = serde_json::from_str(&std::fs::read_to_string(explicit).unwrap()).unwrap();
    assert_eq!(rec.subcommand, "cyclic-demo");
}
