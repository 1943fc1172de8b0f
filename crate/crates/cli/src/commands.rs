//! One function per subcommand. Each returns the record plus its table and
//! text renderings; nothing here writes to stdout.

use std::path::Path;

use qspecies::culling::{cull_gap, jozsa_clonability_check_with, make_basis_culler};
use qspecies::hilbert::{inner_product, random_state, random_state_from, random_unitary_from, seeded_rng};
use qspecies::mutation::{
    entangling_unitarity_residual, overlap_entangled_brute_force, paradox_sweep_s2, qubit_orthogonal_example,
    EntanglingResidual,
};
use qspecies::replication::{
    build_prob_clone_machine_with, clone_gap_with, cyclic_replication_demo_with, duan_guo_search,
    make_basis_cloner, period_four_qubit_evolution, sample_prob_clone, wigner_count, RejectedReference,
};
use qspecies::{StateVector, UnitaryMatrix, C64, MAX_TOTAL_DIM};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amplitudes::{parse_complex, parse_state};
use crate::record::{fmt_c64, fmt_f64, fmt_opt, ExperimentRecord, Table};
use crate::{
    BlankSpec, CliError, CloneArgs, CullArgs, CyclicArgs, EntangleArgs, EntangleMode, JozsaArgs, ProbArgs,
    RejectedSpec, RunConfig, StateArgs, SweepArgs, WignerArgs,
};

/// Residual above which a random trial counts as violating the unitarity demand.
pub const RESIDUAL_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub record: ExperimentRecord,
    pub table: Table,
    pub text: String,
    pub warnings: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn params(cfg: &RunConfig, seed: Option<u64>, extra: Value) -> Value {
    let mut p = json!({ "tolerances": to_value(&cfg.tolerances) });
    if let Some(s) = seed {
        p["seed"] = json!(s);
    }
    if let (Value::Object(dst), Value::Object(src)) = (&mut p, extra) {
        dst.extend(src);
    }
    p
}

/// Resolved `--psi/--basis/--random/--dim` selection.
struct ResolvedState {
    state: StateVector,
    description: Value,
    seed: Option<u64>,
    warnings: Vec<String>,
}

fn resolve_state(src: &StateArgs, cfg: &RunConfig) -> Result<ResolvedState, CliError> {
    let mut warnings = Vec::new();
    let (state, description, seed) = if let Some(spec) = &src.psi {
        let (s, w) = parse_state(spec).map_err(CliError::Usage)?;
        warnings.extend(w);
        if let Some(d) = src.dim {
            if d != s.dim() {
                return Err(CliError::Usage(format!("--dim {d} but the state has {} amplitudes", s.dim())));
            }
        }
        (s, json!({ "kind": "explicit", "spec": spec }), None)
    } else if src.random {
        let seed = cfg.require_seed("--random")?;
        let d = src.dim.unwrap_or(2);
        check_dim(d)?;
        (random_state(d, seed), json!({ "kind": "random", "dim": d }), Some(seed))
    } else if let Some(k) = src.basis {
        let d = src.dim.unwrap_or(2);
        check_dim(d)?;
        (StateVector::basis(d, k)?, json!({ "kind": "basis", "dim": d, "index": k }), None)
    } else {
        let d = src.dim.unwrap_or(2);
        check_dim(d)?;
        (StateVector::uniform(d)?, json!({ "kind": "uniform", "dim": d }), None)
    };
    Ok(ResolvedState {
        state,
        description,
        seed,
        warnings,
    })
}

fn check_dim(d: usize) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    Ok(())
}

fn parse_range(spec: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("malformed range `{spec}`; expected LO:HI"));
    let (lo, hi) = spec.split_once(':').ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo {
        return Err(CliError::Usage(format!("range `{spec}` must satisfy 1 <= LO <= HI")));
    }
    Ok((lo, hi))
}

pub fn cmd_wigner_count(args: &WignerArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let pairs: Vec<(u64, u64)> = match (&args.grid, args.n, args.r) {
        (Some(grid), None, None) => {
            let (n_spec, r_spec) = grid
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("malformed grid `{grid}`; expected NLO:NHI,RLO:RHI")))?;
            let (n0, n1) = parse_range(n_spec)?;
            let (r0, r1) = parse_range(r_spec)?;
            (n0..=n1).flat_map(|n| (r0..=r1).map(move |r| (n, r))).collect()
        }
        (None, Some(n), Some(r)) => vec![(n, r)],
        (Some(_), _, _) => return Err(CliError::Usage("--grid cannot be combined with --n/--r".into())),
        _ => return Err(CliError::Usage("give both --n and --r, or --grid".into())),
    };
    if pairs.iter().any(|&(n, r)| n == 0 || r == 0) {
        return Err(CliError::Usage("N and R must be positive".into()));
    }
    let counts = pairs
        .iter()
        .map(|&(n, r)| wigner_count(n, r))
        .collect::<qspecies::Result<Vec<_>>>()?;
    let mut table = Table::new(["N", "R", "equations", "unknowns", "deficit"]);
    for c in &counts {
        table.push(vec![
            c.n.to_string(),
            c.r.to_string(),
            c.equations.to_string(),
            c.unknowns.to_string(),
            c.deficit.to_string(),
        ]);
    }
    let text = format!(
        "Real equations vs unknowns for a universal replicator\n{}",
        table.to_text()
    );
    let p = params(cfg, None, json!({ "pairs": pairs }));
    Ok(CommandOutput {
        record: ExperimentRecord::new("wigner-count", p, to_value(&counts)),
        table,
        text,
        warnings: Vec::new(),
    })
}

fn parse_reference(spec: &str) -> Result<RejectedReference, CliError> {
    if spec == "best" {
        return Ok(RejectedReference::Best);
    }
    let k = spec.strip_prefix("index:").unwrap_or(spec);
    k.parse()
        .map(RejectedReference::Index)
        .map_err(|_| CliError::Usage(format!("malformed reference `{spec}`; expected index:K or best")))
}

pub fn cmd_clone_demo(args: &CloneArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let st = resolve_state(&args.state, cfg)?;
    let d = st.state.dim();
    let rejected: Vec<StateVector> = match args.rejected {
        RejectedSpec::Shared => vec![StateVector::basis(2, 0)?; d],
        RejectedSpec::Orthogonal => (0..d).map(|k| StateVector::basis(d, k)).collect::<qspecies::Result<_>>()?,
    };
    let r_dim = rejected[0].dim();
    let cloner = make_basis_cloner(d, StateVector::basis(d * r_dim, 0)?, rejected)?;
    let reference = parse_reference(&args.reference)?;
    let report = clone_gap_with(&cloner, &st.state, &reference)?;
    let table = Table::key_value([
        ("fidelity", fmt_f64(report.fidelity)),
        ("reduced_purity", fmt_f64(report.reduced_purity)),
        ("entropy_bits", fmt_f64(report.entropy_bits)),
        ("output_norm", fmt_f64(report.output_norm)),
    ]);
    let text = format!(
        "Linear-extension cloner on a dimension-{d} state\n\
         fidelity with ideal clone : {}\n\
         reduced purity (copy)     : {}\n\
         entanglement entropy      : {} bits\n",
        report.fidelity, report.reduced_purity, report.entropy_bits
    );
    let p = params(
        cfg,
        st.seed,
        json!({ "state": st.description, "rejected": args.rejected, "reference": args.reference }),
    );
    let results = json!({ "state": st.state, "report": report });
    Ok(CommandOutput {
        record: ExperimentRecord::new("clone-demo", p, results),
        table,
        text,
        warnings: st.warnings,
    })
}

pub fn cmd_prob_clone(args: &ProbArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    if !(0.0..1.0).contains(&args.s) {
        return Err(CliError::Usage(format!("--s {} must lie in [0, 1)", args.s)));
    }
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let seed = cfg.require_seed("prob-clone")?;
    let s = args.s;
    let psi1 = StateVector::basis(2, 0)?;
    let psi2 = StateVector::from_real(&[s, (1.0 - s * s).sqrt()])?;
    let search = duan_guo_search(&psi1, &psi2)?;
    let machine = build_prob_clone_machine_with(&psi1, &psi2, search.p_max, &cfg.tolerances)?;
    let gram_error = machine.gram_preservation_error();
    let success_error = machine.success_branch_error()?;
    let samples = [
        sample_prob_clone(&machine, 1, args.trials, seed)?,
        sample_prob_clone(&machine, 2, args.trials, seed.wrapping_add(1))?,
    ];
    let p = search.p_max;
    let sigma = (p * (1.0 - p) / args.trials as f64).sqrt();
    let within_3_sigma: Vec<bool> = samples.iter().map(|r| (r.rate - p).abs() <= 3.0 * sigma + 1e-15).collect();
    let table = Table::key_value([
        ("s", fmt_f64(s)),
        ("p_max", fmt_f64(p)),
        ("bound", fmt_f64(search.bound)),
        ("gram_preservation_error", fmt_f64(gram_error)),
        ("success_branch_error", fmt_f64(success_error)),
        ("rate_1", fmt_f64(samples[0].rate)),
        ("rate_2", fmt_f64(samples[1].rate)),
        ("sigma", fmt_f64(sigma)),
    ]);
    let text = format!(
        "Probabilistic cloning of two states with overlap {s}\n\
         searched p_max     : {p}\n\
         bound 1/(1+s)      : {}\n\
         Gram error         : {gram_error:e}\n\
         success-branch err : {success_error:e}\n\
         empirical rates    : {} (input 1), {} (input 2) over {} trials each\n\
         binomial sigma     : {sigma:e}; within 3 sigma: {:?}\n",
        search.bound, samples[0].rate, samples[1].rate, args.trials, within_3_sigma
    );
    let results = json!({
        "search": search,
        "gram_preservation_error": gram_error,
        "success_branch_error": success_error,
        "failure_overlap": machine.failure_overlap(),
        "samples": samples,
        "sigma": sigma,
        "within_3_sigma": within_3_sigma,
    });
    let p = params(cfg, Some(seed), json!({ "s": s, "trials": args.trials }));
    Ok(CommandOutput {
        record: ExperimentRecord::new("prob-clone", p, results),
        table,
        text,
        warnings: Vec::new(),
    })
}

pub fn cmd_cull_demo(args: &CullArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let st = resolve_state(&args.state, cfg)?;
    let d = st.state.dim();
    let blanks: Vec<StateVector> = match args.blanks {
        BlankSpec::Shared => vec![StateVector::basis(d, 0)?; d],
        BlankSpec::Orthogonal => (0..d).map(|k| StateVector::basis(d, k)).collect::<qspecies::Result<_>>()?,
    };
    let ideal = StateVector::basis(d, 0)?;
    let culler = make_basis_culler(d, StateVector::basis(2, 0)?, blanks)?;
    let report = cull_gap(&culler, &st.state, &ideal)?;
    let recovered = report.recovery_error <= cfg.tolerances.norm;
    let table = Table::key_value([
        ("fidelity_vs_ideal", fmt_f64(report.fidelity_vs_ideal)),
        ("diagonal_weight", fmt_f64(report.diagonal_weight)),
        ("offdiag_weight", fmt_f64(report.offdiag_weight)),
        ("recovery_error", fmt_f64(report.recovery_error)),
        ("recovered", recovered.to_string()),
    ]);
    let text = format!(
        "Linear-extension culler on a dimension-{d} state\n\
         fidelity with |psi>|w> : {}\n\
         diagonal weight        : {}\n\
         off-diagonal weight    : {}\n\
         inverse recovery error : {:e} ({})\n",
        report.fidelity_vs_ideal,
        report.diagonal_weight,
        report.offdiag_weight,
        report.recovery_error,
        if recovered { "input reproduced" } else { "NOT reproduced" }
    );
    let p = params(cfg, st.seed, json!({ "state": st.description, "blanks": args.blanks }));
    let results = json!({ "state": st.state, "report": report, "recovered": recovered });
    Ok(CommandOutput {
        record: ExperimentRecord::new("cull-demo", p, results),
        table,
        text,
        warnings: st.warnings,
    })
}

fn sweep_values(args: &SweepArgs) -> Result<Vec<u64>, CliError> {
    let ms: Vec<u64> = match (&args.m, &args.m_range) {
        (Some(_), Some(_)) => return Err(CliError::Usage("--m cannot be combined with --m-range".into())),
        (Some(list), None) => list
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("malformed copy count `{t}`"))))
            .collect::<Result<_, _>>()?,
        (None, range) => {
            let (lo, hi) = parse_range(range.as_deref().unwrap_or("1:1024"))?;
            match args.step {
                Some(0) => return Err(CliError::Usage("--step must be positive".into())),
                Some(step) => (lo..=hi).step_by(step as usize).collect(),
                None => std::iter::successors(Some(lo), |&m| m.checked_mul(2)).take_while(|&m| m <= hi).collect(),
            }
        }
    };
    if ms.is_empty() || ms.contains(&0) {
        return Err(CliError::Usage("copy counts must be positive".into()));
    }
    Ok(ms)
}

/// Qubit, unitary pair with `|⟨ψ|U|ψ⟩|² = s2`: `ψ = |0⟩`, `U = Ry(2 acos √s2)`.
pub fn sweep_witness(s2: f64) -> (StateVector, UnitaryMatrix) {
    let theta = 2.0 * s2.sqrt().clamp(0.0, 1.0).acos();
    (StateVector::basis(2, 0).expect("qubit basis"), UnitaryMatrix::ry(theta))
}

/// Copy counts for which a qubit tensor oracle fits in memory.
fn oracle_fits(m: u64) -> bool {
    m < 64 && (1u128 << m) <= MAX_TOTAL_DIM as u128
}

#[derive(Debug, Clone, Serialize)]
struct SweepRow {
    #[serde(flatten)]
    report: qspecies::mutation::MutationReport,
    oracle_overlap: Option<f64>,
    oracle_agreement: Option<f64>,
}

pub fn cmd_paradox_sweep(args: &SweepArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    if !(0.0..=1.0).contains(&args.s2) {
        return Err(CliError::Usage(format!("--s2 {} must lie in [0, 1]", args.s2)));
    }
    let ms = sweep_values(args)?;
    let reports = paradox_sweep_s2(args.s2, &ms)?;
    let (psi, u) = sweep_witness(args.s2);
    let rows = reports
        .into_iter()
        .map(|r| {
            let oracle = if args.no_oracle || !oracle_fits(r.m) {
                None
            } else {
                Some(overlap_entangled_brute_force(&psi, &u, r.m)?)
            };
            Ok(SweepRow {
                report: r,
                oracle_overlap: oracle,
                oracle_agreement: oracle.map(|o| (o - r.overlap_entangled).abs()),
            })
        })
        .collect::<qspecies::Result<Vec<_>>>()?;
    let mut table = Table::new([
        "M",
        "s2",
        "overlap_entangled",
        "overlap_unentangled",
        "ratio",
        "oracle_overlap",
        "oracle_agreement",
    ]);
    for r in &rows {
        table.push(vec![
            r.report.m.to_string(),
            fmt_f64(r.report.s2),
            fmt_f64(r.report.overlap_entangled),
            fmt_f64(r.report.overlap_unentangled),
            fmt_opt(r.report.ratio),
            fmt_opt(r.oracle_overlap),
            fmt_opt(r.oracle_agreement),
        ]);
    }
    let text = format!(
        "Overlap of initial and mutated states over M copies, s2 = {}\n{}",
        args.s2,
        table.to_text()
    );
    let p = params(cfg, None, json!({ "s2": args.s2, "M": ms, "oracle": !args.no_oracle }));
    Ok(CommandOutput {
        record: ExperimentRecord::new("paradox-sweep", p, to_value(&rows)),
        table,
        text,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EntanglingTrial {
    pub overlap_abs: f64,
    /// `|⟨1|U|0⟩|`
    pub b_abs: f64,
    pub residual: f64,
    pub phase_min_residual: f64,
    /// `|⟨post_ψ|post_φ⟩ − rhs|`
    pub consistency_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglingSummary {
    pub trials: u64,
    pub dim: usize,
    pub threshold: f64,
    pub exceed_count: u64,
    pub exceed_fraction: f64,
    pub residual_min: f64,
    pub residual_median: f64,
    pub residual_max: f64,
    /// Trials with `b ≠ 0` and `0 < |⟨ψ|φ⟩| < 1`.
    pub eligible: u64,
    pub phase_min_residual_min: Option<f64>,
    pub consistency_error_max: f64,
    pub samples: Vec<EntanglingTrial>,
}

/// Seeded random trials of the two-copy unitarity demand.
pub fn random_entangling_trials(trials: u64, dim: usize, seed: u64) -> qspecies::Result<EntanglingSummary> {
    let mut rng = seeded_rng(seed);
    let mut samples = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let psi = random_state_from(&mut rng, dim);
        let phi = random_state_from(&mut rng, dim);
        let u = random_unitary_from(&mut rng, dim);
        let r = entangling_unitarity_residual(&psi, &phi, &u)?;
        samples.push(EntanglingTrial {
            overlap_abs: inner_product(&psi, &phi)?.norm(),
            b_abs: u.get(1, 0).norm(),
            residual: r.residual,
            phase_min_residual: r.phase_min_residual,
            consistency_error: (r.post_inner - r.rhs).norm(),
        });
    }
    let mut sorted: Vec<f64> = samples.iter().map(|t| t.residual).collect();
    sorted.sort_by(f64::total_cmp);
    let exceed_count = samples.iter().filter(|t| t.residual > RESIDUAL_THRESHOLD).count() as u64;
    let eligible: Vec<&EntanglingTrial> = samples
        .iter()
        .filter(|t| t.b_abs > 0.0 && t.overlap_abs > 0.0 && t.overlap_abs < 1.0)
        .collect();
    Ok(EntanglingSummary {
        trials,
        dim,
        threshold: RESIDUAL_THRESHOLD,
        exceed_count,
        exceed_fraction: exceed_count as f64 / trials as f64,
        residual_min: sorted[0],
        residual_median: sorted[sorted.len() / 2],
        residual_max: sorted[sorted.len() - 1],
        eligible: eligible.len() as u64,
        phase_min_residual_min: eligible.iter().map(|t| t.phase_min_residual).min_by(f64::total_cmp),
        consistency_error_max: samples.iter().map(|t| t.consistency_error).fold(0.0, f64::max),
        samples,
    })
}

#[derive(Debug, Clone, Serialize)]
struct QubitExampleResult {
    a: C64,
    b: C64,
    residual: EntanglingResidual,
    /// `−(b*)²`
    expected_cross_term: C64,
    cross_term_error: f64,
}

pub fn cmd_check_entangling(args: &EntangleArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match args.mode {
        EntangleMode::Random => {
            if args.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            if args.dim < 2 {
                return Err(CliError::Usage("--dim must be at least 2".into()));
            }
            let seed = cfg.require_seed("check-entangling random")?;
            let summary = random_entangling_trials(args.trials, args.dim, seed)?;
            let table = {
                let mut t = Table::new(["trial", "overlap_abs", "b_abs", "residual", "phase_min_residual"]);
                for (i, s) in summary.samples.iter().enumerate() {
                    t.push(vec![
                        i.to_string(),
                        fmt_f64(s.overlap_abs),
                        fmt_f64(s.b_abs),
                        fmt_f64(s.residual),
                        fmt_f64(s.phase_min_residual),
                    ]);
                }
                t
            };
            let text = format!(
                "Two-copy entangling map, {} random trials in dimension {}\n\
                 residual > {:e}       : {} ({:.2}%)\n\
                 residual min/med/max : {:e} / {:e} / {:e}\n\
                 phase-minimized min  : {} over {} eligible trials\n\
                 post-state consistency (max) : {:e}\n",
                summary.trials,
                summary.dim,
                RESIDUAL_THRESHOLD,
                summary.exceed_count,
                100.0 * summary.exceed_fraction,
                summary.residual_min,
                summary.residual_median,
                summary.residual_max,
                fmt_opt(summary.phase_min_residual_min),
                summary.eligible,
                summary.consistency_error_max,
            );
            let p = params(cfg, Some(seed), json!({ "mode": "random", "trials": args.trials, "dim": args.dim }));
            Ok(CommandOutput {
                record: ExperimentRecord::new("check-entangling", p, to_value(&summary)),
                table,
                text,
                warnings: Vec::new(),
            })
        }
        EntangleMode::QubitExample => {
            let a = parse_complex(&args.a).map_err(CliError::Usage)?;
            let b = parse_complex(&args.b).map_err(CliError::Usage)?;
            let residual = qubit_orthogonal_example(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
            let expected = -(b.conj() * b.conj());
            let res = QubitExampleResult {
                a,
                b,
                residual,
                expected_cross_term: expected,
                cross_term_error: (residual.cross_term - expected).norm(),
            };
            let table = Table::key_value([
                ("cross_term", fmt_c64(residual.cross_term)),
                ("expected_cross_term", fmt_c64(expected)),
                ("cross_term_error", fmt_f64(res.cross_term_error)),
                ("lhs", fmt_c64(residual.lhs)),
                ("rhs", fmt_c64(residual.rhs)),
                ("residual", fmt_f64(residual.residual)),
                ("phase_min_residual", fmt_f64(residual.phase_min_residual)),
            ]);
            let text = format!(
                "Orthogonal qubit pair |0>, |1> with U|0> = a|0> + b|1>\n\
                 cross term <0|U|1><0|U^dag|1> : {}\n\
                 expected -(b*)^2              : {}\n\
                 lhs / rhs                     : {} / {}\n\
                 residual                      : {}\n",
                fmt_c64(residual.cross_term),
                fmt_c64(expected),
                fmt_c64(residual.lhs),
                fmt_c64(residual.rhs),
                residual.residual
            );
            let p = params(cfg, None, json!({ "mode": "qubit-example", "a": args.a, "b": args.b }));
            Ok(CommandOutput {
                record: ExperimentRecord::new("check-entangling", p, to_value(&res)),
                table,
                text,
                warnings: Vec::new(),
            })
        }
    }
}

/// Either `"0.6,0.8j"` or `[[0.6, 0.0], [0.0, 0.8]]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum StateEntry {
    Text(String),
    Pairs(Vec<C64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    states: Vec<StateEntry>,
    ancillas: Vec<StateEntry>,
}

fn load_entry(e: StateEntry, label: &str, warnings: &mut Vec<String>) -> Result<StateVector, CliError> {
    match e {
        StateEntry::Text(s) => {
            let (v, w) = parse_state(&s).map_err(|m| CliError::Usage(format!("{label}: {m}")))?;
            warnings.extend(w);
            Ok(v)
        }
        StateEntry::Pairs(amps) => {
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > crate::amplitudes::NORM_WARNING {
                warnings.push(format!("{label} has norm {norm}; normalizing"));
            }
            StateVector::normalized(amps).map_err(|e| CliError::Usage(format!("{label}: {e}")))
        }
    }
}

/// A state family read from disk, with any normalization warnings.
pub struct Family {
    pub states: Vec<StateVector>,
    pub ancillas: Vec<StateVector>,
    pub warnings: Vec<String>,
}

pub fn load_family(path: &Path) -> Result<Family, CliError> {
    let raw = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let file: FamilyFile =
        serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut warnings = Vec::new();
    let states = file
        .states
        .into_iter()
        .enumerate()
        .map(|(i, e)| load_entry(e, &format!("states[{i}]"), &mut warnings))
        .collect::<Result<Vec<_>, _>>()?;
    let ancillas = file
        .ancillas
        .into_iter()
        .enumerate()
        .map(|(i, e)| load_entry(e, &format!("ancillas[{i}]"), &mut warnings))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Family {
        states,
        ancillas,
        warnings,
    })
}

pub fn cmd_jozsa_check(args: &JozsaArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let Family {
        states,
        ancillas,
        warnings,
    } = load_family(&args.states)?;
    let res = jozsa_clonability_check_with(&states, &ancillas, &cfg.tolerances).map_err(|e| match e {
        qspecies::Error::Domain(m) => CliError::Library(qspecies::Error::Domain(format!(
            "{m}. Ancilla-assisted cloning is only characterized for families without orthogonal pairs"
        ))),
        other => other.into(),
    })?;
    let mut table = Table::new(["k", "l", "residual"]);
    for (k, row) in res.residuals.iter().enumerate() {
        for (l, r) in row.iter().enumerate() {
            table.push(vec![k.to_string(), l.to_string(), fmt_f64(*r)]);
        }
    }
    let mut text = format!(
        "Ancilla-assisted clonability of {} states\nfeasible     : {}\nmax residual : {:e} (tolerance {:e})\nresidual matrix:\n",
        states.len(),
        res.feasible,
        res.max_residual,
        cfg.tolerances.gram
    );
    for row in &res.residuals {
        let cells: Vec<String> = row.iter().map(|r| format!("{r:.3e}")).collect();
        text.push_str(&format!("  {}\n", cells.join("  ")));
    }
    if let Some(c) = &res.construction {
        text.push_str(&format!(
            "transport unitary: max |W a_k - psi_k| = {:e}, max clone error = {:e}\n",
            c.transport_error, c.clone_error
        ));
    }
    let p = params(
        cfg,
        None,
        json!({ "file": args.states.display().to_string(), "states": states, "ancillas": ancillas }),
    );
    Ok(CommandOutput {
        record: ExperimentRecord::new("jozsa-check", p, to_value(&res)),
        table,
        text,
        warnings,
    })
}

pub fn cmd_cyclic_demo(args: &CyclicArgs, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let u = period_four_qubit_evolution();
    let cloner = make_basis_cloner(2, StateVector::basis(4, 0)?, vec![StateVector::basis(2, 0)?; 2])?;
    let psi0 = StateVector::basis(2, args.basis)?;
    let points = cyclic_replication_demo_with(&u, 4, &psi0, &cloner, args.steps, &cfg.tolerances)?;
    let mut table = Table::new(["t", "fidelity"]);
    for p in &points {
        table.push(vec![p.t.to_string(), fmt_f64(p.fidelity)]);
    }
    let text = format!(
        "Clone fidelity along a period-4 qubit evolution from |{}>\n{}",
        args.basis,
        table.to_text()
    );
    let p = params(cfg, None, json!({ "steps": args.steps, "basis": args.basis, "period": 4 }));
    Ok(CommandOutput {
        record: ExperimentRecord::new("cyclic-demo", p, to_value(&points)),
        table,
        text,
        warnings: Vec::new(),
    })
}
