//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use qspecies::culling::{cull_gap, jozsa_clonability_check, make_basis_culler};
use qspecies::hilbert::{
    apply_on_factor_raw, inner_product, random_state_from, random_unitary, random_unitary_from, seeded_rng,
    tensor_power, vecops,
};
use qspecies::mutation::{
    entangling_unitarity_residual, mutation_normalization, overlap_entangled_brute_force,
    overlap_entangled_closed_form, paradox_sweep_s2, qubit_orthogonal_example,
};
use qspecies::replication::{
    build_prob_clone_machine, clone_gap_with, cyclic_replication_demo, duan_guo_search, make_basis_cloner,
    nonorthogonal_unitarity_violation, period_four_qubit_evolution, sample_prob_clone, wigner_count,
    RejectedReference,
};
use qspecies::{CompositeSpace, Error, StateVector, C64};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: qspecies::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The sampling shared by the cloning and culling criteria: 1000 seeded
/// Haar-random states, dimensions cycling through 2, 3, 4.
fn sampled_states() -> Vec<StateVector> {
    let mut rng = seeded_rng(20_240_601);
    (0..1000).map(|i| random_state_from(&mut rng, 2 + i % 3)).collect()
}

fn significant_amplitudes(psi: &StateVector) -> usize {
    psi.amplitudes().iter().filter(|a| a.norm() > 1e-3).count()
}

fn criterion_1() -> Outcome {
    let mut points = 0;
    for n in 1..=6u64 {
        for r in 1..=4u64 {
            let c = lib(wigner_count(n, r))?;
            let eq = 2 * n * n * r;
            let unk = 2 * (n + r + n * r);
            ensure(c.equations == eq && c.unknowns == unk, || {
                format!("N={n} R={r}: got {}/{}, expected {eq}/{unk}", c.equations, c.unknowns)
            })?;
            ensure(c.deficit == eq as i64 - unk as i64, || format!("N={n} R={r}: deficit {}", c.deficit))?;
            if n >= 3 {
                ensure(c.deficit > 0, || format!("N={n} R={r}: deficit {} not positive", c.deficit))?;
            }
            points += 1;
        }
    }
    Ok(format!("{points} grid points exact, deficit > 0 for N >= 3"))
}

fn criterion_2() -> Outcome {
    let mut superpositions = 0;
    let mut worst = 0.0f64;
    for psi in sampled_states() {
        let d = psi.dim();
        let shared = lib(make_basis_cloner(d, lib(StateVector::basis(2 * d, 0))?, vec![lib(StateVector::basis(2, 0))?; d]))?;
        let orth_r = (0..d).map(|k| StateVector::basis(d, k)).collect::<qspecies::Result<Vec<_>>>();
        let orth = lib(make_basis_cloner(d, lib(StateVector::basis(d * d, 0))?, lib(orth_r)?))?;
        let a = lib(clone_gap_with(&shared, &psi, &RejectedReference::Index(0)))?.fidelity;
        let b = lib(clone_gap_with(&orth, &psi, &RejectedReference::Best))?.fidelity;
        if significant_amplitudes(&psi) >= 2 {
            superpositions += 1;
            worst = worst.max(a).max(b);
            ensure(a < 1.0 - 1e-6 && b < 1.0 - 1e-6, || format!("superposition cloned with fidelity {a} / {b}"))?;
        }
        for k in 0..d {
            let basis = lib(StateVector::basis(d, k))?;
            let f = lib(clone_gap_with(&shared, &basis, &RejectedReference::Index(0)))?.fidelity;
            ensure((f - 1.0).abs() <= 1e-10, || format!("basis state {k} in dim {d}: fidelity {f}"))?;
        }
    }
    let cloner = lib(make_basis_cloner(2, lib(StateVector::basis(4, 0))?, vec![lib(StateVector::basis(2, 0))?; 2]))?;
    let rep = lib(clone_gap_with(&cloner, &lib(StateVector::uniform(2))?, &RejectedReference::Index(0)))?;
    ensure((rep.fidelity - 0.5).abs() <= 1e-10, || format!("uniform fidelity {}", rep.fidelity))?;
    ensure((rep.reduced_purity - 0.5).abs() <= 1e-10, || format!("uniform purity {}", rep.reduced_purity))?;
    ensure((rep.entropy_bits - 1.0).abs() <= 1e-8, || format!("uniform entropy {}", rep.entropy_bits))?;
    Ok(format!(
        "{superpositions} superpositions all below 1 - 1e-6 (max {worst:.6}); basis states exact; uniform qubit 0.5 / 0.5 / 1 bit"
    ))
}

/// A pair with `⟨ψ_1|ψ_2⟩ = s e^{iφ}` in dimension `d`, built from a random orthonormal pair.
fn pair_with_overlap(rng: &mut impl Rng, d: usize, s: f64) -> Result<(StateVector, StateVector), String> {
    let u = random_unitary_from(rng, d);
    let e0 = u.column(0);
    let e1 = u.column(1);
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let mut v = vecops::scale(phase * s, &e0);
    vecops::axpy(C64::new((1.0 - s * s).max(0.0).sqrt(), 0.0), &e1, &mut v);
    Ok((lib(StateVector::new(e0))?, lib(StateVector::normalized(v))?))
}

fn criterion_3() -> Outcome {
    let mut rng = seeded_rng(33);
    let mut min_v = f64::INFINITY;
    for i in 0..1000 {
        let s = rng.random_range(0.05..=0.95);
        let (a, b) = pair_with_overlap(&mut rng, 2 + i % 3, s)?;
        let v = lib(nonorthogonal_unitarity_violation(&a, &b))?;
        ensure(v > 0.0 && (v - (s - s * s)).abs() < 1e-12, || format!("|s| = {s}: v = {v}"))?;
        min_v = min_v.min(v);
    }
    for s in [0.0, 1.0] {
        for d in 2..5 {
            let (a, b) = pair_with_overlap(&mut rng, d, s)?;
            let v = lib(nonorthogonal_unitarity_violation(&a, &b))?;
            ensure(v.abs() <= 1e-12, || format!("|s| = {s}: v = {v}"))?;
        }
    }
    Ok(format!("1000 pairs with |s| in [0.05, 0.95] violate (min v = {min_v:.4}); v = 0 at |s| in {{0, 1}}"))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let psi1 = lib(StateVector::basis(2, 0))?;
        let psi2 = lib(StateVector::from_real(&[s, (1.0 - s * s).sqrt()]))?;
        let search = lib(duan_guo_search(&psi1, &psi2))?;
        let bound = 1.0 / (1.0 + s);
        ensure((search.p_max - bound).abs() <= 1e-6, || format!("s = {s}: p_max {} vs {bound}", search.p_max))?;
        let machine = lib(build_prob_clone_machine(&psi1, &psi2, search.p_max))?;
        lib(machine.validate(1e-10))?;
        match build_prob_clone_machine(&psi1, &psi2, search.p_max + 1e-3) {
            Err(Error::Infeasible(_)) => {}
            other => return Err(format!("s = {s}: p_max + 1e-3 gave {:?}", other.map(|_| "a machine"))),
        }
        notes.push(format!("{:.6}", search.p_max));
    }
    let psi1 = lib(StateVector::basis(2, 0))?;
    let psi2 = lib(StateVector::from_real(&[0.5, 0.75f64.sqrt()]))?;
    let p = lib(duan_guo_search(&psi1, &psi2))?.p_max;
    let machine = lib(build_prob_clone_machine(&psi1, &psi2, p))?;
    let mut within = 0;
    for rep in 0..100u64 {
        let r = lib(sample_prob_clone(&machine, 1 + (rep % 2) as usize, 100_000, 1_000 + rep))?;
        if (r.rate - 2.0 / 3.0).abs() <= 0.0045 {
            within += 1;
        }
    }
    ensure(within >= 99, || format!("only {within}/100 repetitions within 0.0045 of 2/3"))?;
    Ok(format!(
        "p_max = [{}] match 1/(1+s); invariants hold, p_max + 1e-3 infeasible; {within}/100 Monte-Carlo runs within 0.0045",
        notes.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let mut superpositions = 0;
    let mut worst_recovery = 0.0f64;
    let mut rng = seeded_rng(55);
    for psi in sampled_states() {
        let d = psi.dim();
        let blanks: Vec<StateVector> = (0..d).map(|_| random_state_from(&mut rng, d)).collect();
        let ideal = blanks[0].clone();
        let culler = lib(make_basis_culler(d, random_state_from(&mut rng, 2), blanks))?;
        let rep = lib(cull_gap(&culler, &psi, &ideal))?;
        worst_recovery = worst_recovery.max(rep.recovery_error);
        ensure(rep.recovery_error <= 1e-10, || format!("recovery error {}", rep.recovery_error))?;
        if significant_amplitudes(&psi) >= 2 {
            superpositions += 1;
            ensure(rep.fidelity_vs_ideal < 1.0, || format!("superposition culled with fidelity {}", rep.fidelity_vs_ideal))?;
        }
    }
    let w = lib(StateVector::basis(2, 0))?;
    let culler = lib(make_basis_culler(2, lib(StateVector::basis(2, 0))?, vec![w.clone(), w.clone()]))?;
    let rep = lib(cull_gap(&culler, &lib(StateVector::uniform(2))?, &w))?;
    ensure((rep.fidelity_vs_ideal - 0.5).abs() <= 1e-10, || format!("uniform fidelity {}", rep.fidelity_vs_ideal))?;
    Ok(format!(
        "{superpositions} superpositions all below 1; uniform qubit 0.5; recovery error <= {worst_recovery:.1e}"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = seeded_rng(66);
    let mut misclassified = 0;
    let mut max_feasible_residual = 0.0f64;
    let mut min_infeasible_residual = f64::INFINITY;
    for family in 0..50 {
        let d = 2 + family % 3;
        let n = 2 + (family / 3) % 4;
        let states: Vec<StateVector> = (0..n).map(|_| random_state_from(&mut rng, d)).collect();
        let v = random_unitary_from(&mut rng, d);
        let mut ancillas: Vec<StateVector> = states.iter().map(|s| v.adjoint().apply(s)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let truly_feasible = family % 2 == 0;
        if !truly_feasible {
            let k = rng.random_range(0..n);
            let theta = rng.random_range(0.05..3.0);
            let rotated = vecops::scale(C64::from_polar(1.0, theta), ancillas[k].amplitudes());
            ancillas[k] = lib(StateVector::new(rotated))?;
        }
        let res = lib(jozsa_clonability_check(&states, &ancillas))?;
        ensure(res.feasible == (res.max_residual <= 1e-9), || format!("family {family}: flag disagrees with residual"))?;
        if res.feasible != truly_feasible {
            misclassified += 1;
        }
        if truly_feasible {
            max_feasible_residual = max_feasible_residual.max(res.max_residual);
            let c = res.construction.as_ref().ok_or("feasible family without construction")?;
            ensure(c.clone_error <= 1e-9, || format!("family {family}: clone error {}", c.clone_error))?;
        } else {
            min_infeasible_residual = min_infeasible_residual.min(res.max_residual);
        }
    }
    ensure(misclassified == 0, || format!("{misclassified} misclassified families"))?;
    let states: Vec<StateVector> = (0..3).map(|_| random_state_from(&mut rng, 3)).collect();
    let constant = vec![random_state_from(&mut rng, 3); 3];
    ensure(!lib(jozsa_clonability_check(&states, &constant))?.feasible, || "constant ancilla classified feasible".into())?;
    Ok(format!(
        "50 families, 0 misclassified (feasible residual <= {max_feasible_residual:.1e}, infeasible >= {min_infeasible_residual:.1e}); constant ancilla infeasible"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = seeded_rng(77);
    let mut worst = 0.0f64;
    let mut worst_norm = 0.0f64;
    for pair in 0..200 {
        let d = 2 + pair % 2;
        let psi = random_state_from(&mut rng, d);
        let u = random_unitary_from(&mut rng, d);
        let s2 = u.expectation(&psi).map_err(|e| e.to_string())?.norm_sqr();
        for m in 2..=6u64 {
            let closed = lib(overlap_entangled_closed_form(&psi, &u, m))?;
            let brute = lib(overlap_entangled_brute_force(&psi, &u, m))?;
            worst = worst.max((closed - brute).abs());
            // normalization: 1 / ‖Σ_j U_j ψ^{⊗M}‖ from the explicit sum
            let base = lib(tensor_power(&psi, m as usize))?;
            let space = lib(CompositeSpace::new(vec![d; m as usize]))?;
            let mut sum = vec![C64::new(0.0, 0.0); base.dim()];
            for j in 0..m as usize {
                vecops::axpy(C64::new(1.0, 0.0), &lib(apply_on_factor_raw(&u, base.amplitudes(), &space, j))?, &mut sum);
            }
            let n = lib(mutation_normalization(s2.min(1.0), m))?;
            let mf = m as f64;
            worst_norm = worst_norm
                .max((n - 1.0 / (mf + mf * (mf - 1.0) * s2).sqrt()).abs())
                .max((n - 1.0 / vecops::norm(&sum)).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("closed form vs oracle differs by {worst:e}"))?;
    ensure(worst_norm <= 1e-12, || format!("normalization differs by {worst_norm:e}"))?;
    let ms: Vec<u64> = (0..=10).map(|k| 1 << k).collect();
    let sweep = lib(paradox_sweep_s2(0.5, &ms))?;
    ensure(sweep.windows(2).all(|w| w[1].overlap_entangled > w[0].overlap_entangled), || "sweep not strictly increasing".into())?;
    let last = sweep.last().unwrap().overlap_entangled;
    ensure(last >= 0.999, || format!("overlap at M = 1024 is {last}"))?;
    Ok(format!(
        "oracle agreement {worst:.1e} over 200 pairs x M = 2..6; normalization {worst_norm:.1e}; s2 = 0.5 sweep reaches {last:.4} at M = 1024"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = seeded_rng(88);
    let mut exceed = 0;
    let mut eligible = 0;
    let mut min_phase = f64::INFINITY;
    for _ in 0..1000 {
        let psi = random_state_from(&mut rng, 2);
        let phi = random_state_from(&mut rng, 2);
        let u = random_unitary_from(&mut rng, 2);
        let r = lib(entangling_unitarity_residual(&psi, &phi, &u))?;
        if r.residual > 1e-6 {
            exceed += 1;
        }
        let ov = lib(inner_product(&psi, &phi))?.norm();
        if u.get(1, 0).norm() > 0.0 && ov > 0.0 && ov < 1.0 {
            eligible += 1;
            min_phase = min_phase.min(r.phase_min_residual);
        }
    }
    ensure(exceed >= 990, || format!("only {exceed}/1000 residuals above 1e-6"))?;
    ensure(min_phase > 1e-6, || format!("phase-minimized residual fell to {min_phase:e}"))?;
    let mut worst_cross = 0.0f64;
    for seed in 0..20 {
        let u = random_unitary(2, 8_000 + seed);
        let (a, b) = (u.get(0, 0), u.get(1, 0));
        let r = lib(qubit_orthogonal_example(a, b))?;
        worst_cross = worst_cross.max((r.cross_term + b.conj() * b.conj()).norm());
    }
    ensure(worst_cross <= 1e-12, || format!("cross term off by {worst_cross:e}"))?;
    Ok(format!(
        "{exceed}/1000 residuals > 1e-6; phase-minimized min {min_phase:.2e} over {eligible} eligible; cross term error {worst_cross:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let u = period_four_qubit_evolution();
    let cloner = lib(make_basis_cloner(2, lib(StateVector::basis(4, 0))?, vec![lib(StateVector::basis(2, 0))?; 2]))?;
    let points = lib(cyclic_replication_demo(&u, 4, &lib(StateVector::basis(2, 0))?, &cloner, 8))?;
    for p in &points {
        if p.t % 4 == 0 {
            ensure((p.fidelity - 1.0).abs() <= 1e-8, || format!("t = {}: fidelity {}", p.t, p.fidelity))?;
        } else {
            ensure(p.fidelity <= 1.0 - 1e-3, || format!("t = {}: fidelity {}", p.t, p.fidelity))?;
        }
    }
    let off: Vec<String> = points.iter().filter(|p| p.t % 4 != 0).map(|p| format!("{:.4}", p.fidelity)).collect();
    Ok(format!("fidelity 1 at t = 0, 4, 8; off-period fidelities [{}]", off.join(", ")))
}

fn run_cli(args: &[String]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qspecies"))
        .args(args)
        .env_remove(qspecies_cli::OUTPUT_DIR_ENV)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok(text.lines().filter(|l| !l.trim_start().starts_with("\"timestamp\"")).collect::<Vec<_>>().join("\n"))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let family = dir.path().join("family.json");
    std::fs::write(&family, r#"{"states": ["1,0", "0.6,0.8j", "0.5+0.5j,0.5-0.5j"], "ancillas": ["1,0", "0.6,0.8j", "0.5+0.5j,0.5-0.5j"]}"#)
        .map_err(|e| e.to_string())?;
    let family = family.to_str().ok_or("non-utf8 temp path")?;
    let cases: Vec<Vec<&str>> = vec![
        vec!["wigner-count", "--grid", "1:6,1:4"],
        vec!["clone-demo", "--random", "--dim", "3"],
        vec!["prob-clone", "--s", "0.5"],
        vec!["cull-demo", "--random", "--dim", "4"],
        vec!["paradox-sweep", "--s2", "0.5"],
        vec!["check-entangling", "random"],
        vec!["check-entangling", "qubit-example", "--a", "0.6", "--b", "0.8j"],
        vec!["jozsa-check", "--states", family],
        vec!["cyclic-demo", "--steps", "12"],
    ];
    for case in &cases {
        let mut args: Vec<String> = ["--format", "json", "--seed", "7"].iter().map(|s| s.to_string()).collect();
        args.extend(case.iter().map(|s| s.to_string()));
        let first = run_cli(&args)?;
        let second = run_cli(&args)?;
        ensure(first == second, || format!("{case:?}: payload changed between runs"))?;
    }
    Ok(format!("{} subcommand invocations byte-identical across reruns", cases.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("Wigner counting", Duration::from_secs(1), criterion_1),
        ("no-cloning gap", Duration::from_secs(10), criterion_2),
        ("non-orthogonal pair impossibility", Duration::from_secs(1), criterion_3),
        ("probabilistic cloning bound", Duration::from_secs(60), criterion_4),
        ("no-culling", Duration::from_secs(10), criterion_5),
        ("ancilla-assisted clonability", Duration::from_secs(5), criterion_6),
        ("mutation paradox", Duration::from_secs(30), criterion_7),
        ("entangling impossibility", Duration::from_secs(10), criterion_8),
        ("cyclic copyability", Duration::from_secs(1), criterion_9),
        ("CLI reproducibility", Duration::from_secs(30), criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; but took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {:>2}  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
