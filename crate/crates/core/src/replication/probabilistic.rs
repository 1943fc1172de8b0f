use rand::Rng;
use serde::Serialize;

use crate::hilbert::{inner_product, seeded_rng, vecops, CompositeSpace, LinearExtensionMap, StateVector, Tolerances, C64};
use crate::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);

/// `|s| − |s|²` for `s = ⟨ψ_1|ψ_2⟩`.
///
/// Deterministic cloning of the pair needs `s = s²⟨r_1|r_2⟩`, hence
/// `|s| ≤ |s|²` since `|⟨r_1|r_2⟩| ≤ 1`. A positive value certifies that no
/// unitary clones both states.
pub fn nonorthogonal_unitarity_violation(psi1: &StateVector, psi2: &StateVector) -> Result<f64> {
    let s = inner_product(psi1, psi2)?.norm();
    Ok(s - s * s)
}

/// The rejected-state overlap `1/s` that deterministic cloning would demand,
/// or `None` when `s = 0` and any overlap works.
pub fn required_rejected_overlap(psi1: &StateVector, psi2: &StateVector) -> Result<Option<C64>> {
    let s = inner_product(psi1, psi2)?;
    Ok(if s == ZERO { None } else { Some(s.inv()) })
}

/// `1/(1 + |s|)`
pub fn duan_guo_bound(overlap_abs: f64) -> f64 {
    1.0 / (1.0 + overlap_abs)
}

/// Unit-modulus `⟨r_1|r_2⟩` that makes `s²⟨r_1|r_2⟩` share the phase of `s`.
pub fn aligned_rejected_overlap(s: C64) -> C64 {
    if s == ZERO {
        C64::new(1.0, 0.0)
    } else {
        s.conj() / s.norm()
    }
}

/// Outcome of the success-probability search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DuanGuoSearch {
    pub overlap: C64,
    /// Largest symmetric success probability found.
    pub p_max: f64,
    /// Maximizing `⟨r_1|r_2⟩`.
    pub rejected_overlap: C64,
    /// `1/(1+|s|)`
    pub bound: f64,
}

/// Smallest eigenvalue of the Hermitian 2×2 matrix `[[a, b], [b*, a]]`.
fn min_eig_equal_diag(a: f64, b: C64) -> f64 {
    a - b.norm()
}

/// Minimum eigenvalue of `G1 − p·G2` where `G1_ij = ⟨ψ_i|ψ_j⟩` and
/// `G2_ij = ⟨ψ_i|ψ_j⟩²⟨r_i|r_j⟩`. This matrix is `(1−p)` times the Gram matrix
/// of the failure branches, so it must be PSD.
fn feasibility_eigenvalue(s: C64, rho: C64, p: f64) -> f64 {
    min_eig_equal_diag(1.0 - p, s - p * s * s * rho)
}

/// Largest `p ∈ [0,1]` with `G1 − p·G2` PSD, by bisection.
fn max_p_for(s: C64, rho: C64) -> f64 {
    let feasible = |p: f64| feasibility_eigenvalue(s, rho, p) >= 0.0;
    if feasible(1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn check_independent(s: C64) -> Result<()> {
    if 1.0 - s.norm_sqr() <= 1e-12 {
        return Err(Error::DegenerateInput(format!(
            "states with overlap |s| = {} are linearly dependent",
            s.norm()
        )));
    }
    Ok(())
}

/// Searches the largest symmetric success probability `p_1 = p_2 = p`.
///
/// The phase of `⟨r_1|r_2⟩` is aligned analytically; its magnitude is found by
/// golden-section search on `[0, 1]`, each point solved by bisection on the
/// PSD condition.
pub fn duan_guo_search(psi1: &StateVector, psi2: &StateVector) -> Result<DuanGuoSearch> {
    let s = inner_product(psi1, psi2)?;
    check_independent(s)?;
    let phase = aligned_rejected_overlap(s);
    let objective = |m: f64| max_p_for(s, phase * m);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    while b - a > 1e-12 {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        }
    }
    let mut best = (0.5 * (a + b), objective(0.5 * (a + b)));
    for m in [0.0, 1.0] {
        let p = objective(m);
        if p > best.1 {
            best = (m, p);
        }
    }
    Ok(DuanGuoSearch {
        overlap: s,
        p_max: best.1,
        rejected_overlap: phase * best.0,
        bound: duan_guo_bound(s.norm()),
    })
}

/// Largest symmetric success probability for cloning `{ψ_1, ψ_2}` with a probe.
pub fn duan_guo_max_probability(psi1: &StateVector, psi2: &StateVector) -> Result<f64> {
    Ok(duan_guo_search(psi1, psi2)?.p_max)
}

/// An explicit probabilistic cloner for two states.
///
/// Space layout: organism (N) ⊗ copy (N) ⊗ rejected (2) ⊗ probe (3). The
/// nutrient is `|0⟩|0⟩` on copy ⊗ rejected, the probe starts in `|P_0⟩ = |0⟩`,
/// success is `|P_1⟩ = |1⟩` and the failure branches carry `|P_fail⟩ = |2⟩`.
/// The failure branches live in the span of `|0,0,0,P_fail⟩` and `|0,0,1,P_fail⟩`.
#[derive(Debug, Clone)]
pub struct ProbCloneMachine {
    inputs: [StateVector; 2],
    probabilities: [f64; 2],
    rejected: [StateVector; 2],
    nutrient: StateVector,
    probe_initial: StateVector,
    probe_success: StateVector,
    failure_overlap: C64,
    space: CompositeSpace,
    images: [Vec<C64>; 2],
    isometry: LinearExtensionMap,
}

const PROBE_DIM: usize = 3;
const PROBE_SUCCESS: usize = 1;
const PROBE_FAIL: usize = 2;

pub fn build_prob_clone_machine(psi1: &StateVector, psi2: &StateVector, p: f64) -> Result<ProbCloneMachine> {
    build_prob_clone_machine_with(psi1, psi2, p, &Tolerances::default())
}

/// Builds the images `T_i = √p |ψ_i⟩|ψ_i⟩|r_i⟩|P_1⟩ + √(1−p) |Φ_i⟩` with the
/// failure overlap `⟨Φ_1|Φ_2⟩` solved from Gram preservation and the failure
/// vectors realized by a 2×2 Cholesky factorization.
pub fn build_prob_clone_machine_with(
    psi1: &StateVector,
    psi2: &StateVector,
    p: f64,
    tol: &Tolerances,
) -> Result<ProbCloneMachine> {
    if p.is_nan() || p < 0.0 {
        return Err(Error::Argument(format!("success probability must be in [0, 1], got {p}")));
    }
    if p > 1.0 {
        return Err(Error::Infeasible(format!("success probability {p} exceeds 1")));
    }
    let s = inner_product(psi1, psi2)?;
    check_independent(s)?;
    let d = psi1.dim();
    let rho = aligned_rejected_overlap(s);

    let lambda = feasibility_eigenvalue(s, rho, p);
    if lambda < -tol.psd_floor {
        return Err(Error::Infeasible(format!(
            "p = {p} exceeds the feasible maximum {} for |s| = {} (failure Gram eigenvalue {lambda:e})",
            duan_guo_bound(s.norm()),
            s.norm()
        )));
    }

    let r1 = StateVector::basis(2, 0)?;
    let r2 = StateVector::new(vec![rho, ZERO])?;
    let nutrient = StateVector::basis(2 * d, 0)?;
    let probe_initial = StateVector::basis(PROBE_DIM, 0)?;
    let probe_success = StateVector::basis(PROBE_DIM, PROBE_SUCCESS)?;
    let space = CompositeSpace::new(vec![d, d, 2, PROBE_DIM])?;
    let total = space.total_dim();

    // Cholesky of [[1, f], [f*, 1]]: Φ_1 = b_1, Φ_2 = f b_1 + √(1−|f|²) b_2.
    let (f, tail) = if p < 1.0 {
        let mut f = (s - p * s * s * rho) / (1.0 - p);
        if f.norm() > 1.0 {
            f /= f.norm();
        }
        (f, (1.0 - f.norm_sqr()).max(0.0).sqrt())
    } else {
        (ZERO, 1.0)
    };
    let b1 = space.index_of(&[0, 0, 0, PROBE_FAIL]);
    let b2 = space.index_of(&[0, 0, 1, PROBE_FAIL]);

    let sp = p.sqrt();
    let sf = (1.0 - p).sqrt();
    let success = |psi: &StateVector, r: &StateVector| {
        let pp = vecops::kron(psi.amplitudes(), psi.amplitudes());
        vecops::kron(&vecops::kron(&pp, r.amplitudes()), probe_success.amplitudes())
    };
    let mut t1 = vecops::scale(sp.into(), &success(psi1, &r1));
    t1[b1] += sf;
    let mut t2 = vecops::scale(sp.into(), &success(psi2, &r2));
    t2[b1] += sf * f;
    t2[b2] += sf * tail;

    // Orthonormalize the inputs X_i = ψ_i ⊗ w ⊗ P_0 and map that basis.
    let input = |psi: &StateVector| {
        vecops::kron(&vecops::kron(psi.amplitudes(), nutrient.amplitudes()), probe_initial.amplitudes())
    };
    let x1 = input(psi1);
    let x2 = input(psi2);
    let perp = (1.0 - s.norm_sqr()).sqrt();
    let mut q2 = x2;
    vecops::axpy(-s, &x1, &mut q2);
    let q2 = vecops::scale((1.0 / perp).into(), &q2);
    let mut a2 = t2.clone();
    vecops::axpy(-s, &t1, &mut a2);
    let a2 = vecops::scale((1.0 / perp).into(), &a2);
    let isometry = LinearExtensionMap::new(total, total, vec![x1, q2], vec![t1.clone(), a2], tol.psd_floor.max(tol.norm))?;

    Ok(ProbCloneMachine {
        inputs: [psi1.clone(), psi2.clone()],
        probabilities: [p, p],
        rejected: [r1, r2],
        nutrient,
        probe_initial,
        probe_success,
        failure_overlap: f,
        space,
        images: [t1, t2],
        isometry,
    })
}

impl ProbCloneMachine {
    pub fn inputs(&self) -> &[StateVector; 2] {
        &self.inputs
    }

    pub fn probabilities(&self) -> [f64; 2] {
        self.probabilities
    }

    pub fn rejected(&self) -> &[StateVector; 2] {
        &self.rejected
    }

    pub fn nutrient(&self) -> &StateVector {
        &self.nutrient
    }

    pub fn probe_initial(&self) -> &StateVector {
        &self.probe_initial
    }

    pub fn probe_success(&self) -> &StateVector {
        &self.probe_success
    }

    /// `⟨Φ_1|Φ_2⟩`
    pub fn failure_overlap(&self) -> C64 {
        self.failure_overlap
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn isometry(&self) -> &LinearExtensionMap {
        &self.isometry
    }

    /// `T_i` for `i ∈ {1, 2}`.
    pub fn image(&self, which: usize) -> Result<&[C64]> {
        Ok(&self.images[slot(which)?])
    }

    /// `|ψ_i⟩|w⟩|P_0⟩`
    pub fn input_vector(&self, which: usize) -> Result<Vec<C64>> {
        let psi = &self.inputs[slot(which)?];
        Ok(vecops::kron(
            &vecops::kron(psi.amplitudes(), self.nutrient.amplitudes()),
            self.probe_initial.amplitudes(),
        ))
    }

    /// `|ψ_i⟩|ψ_i⟩|r_i⟩|P_1⟩`
    pub fn ideal_success_state(&self, which: usize) -> Result<Vec<C64>> {
        let i = slot(which)?;
        let psi = self.inputs[i].amplitudes();
        Ok(vecops::kron(
            &vecops::kron(&vecops::kron(psi, psi), self.rejected[i].amplitudes()),
            self.probe_success.amplitudes(),
        ))
    }

    /// Born probabilities of the probe outcomes `P_0, P_1, P_fail` on `T_i`.
    pub fn probe_distribution(&self, which: usize) -> Result<[f64; PROBE_DIM]> {
        let t = self.image(which)?;
        let mut probs = [0.0; PROBE_DIM];
        for (idx, a) in t.iter().enumerate() {
            probs[idx % PROBE_DIM] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Normalized state after observing `P_1` on `T_i`, or `None` if that outcome has zero weight.
    pub fn post_success_state(&self, which: usize) -> Result<Option<Vec<C64>>> {
        let t = self.image(which)?;
        let proj: Vec<C64> = t
            .iter()
            .enumerate()
            .map(|(idx, &a)| if idx % PROBE_DIM == PROBE_SUCCESS { a } else { ZERO })
            .collect();
        let n = vecops::norm(&proj);
        Ok(if n == 0.0 { None } else { Some(vecops::scale((1.0 / n).into(), &proj)) })
    }

    /// Largest deviation among `⟨T_i|T_j⟩ − ⟨ψ_i|ψ_j⟩` over all index pairs.
    pub fn gram_preservation_error(&self) -> f64 {
        let s = vecops::vdot(self.inputs[0].amplitudes(), self.inputs[1].amplitudes());
        let g = [[C64::new(1.0, 0.0), s], [s.conj(), C64::new(1.0, 0.0)]];
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((vecops::vdot(&self.images[i], &self.images[j]) - g[i][j]).norm());
            }
        }
        worst
    }

    /// Largest deviation of the success weight from `p_i` or of the
    /// post-success state from `|ψ_i⟩|ψ_i⟩|r_i⟩|P_1⟩`.
    pub fn success_branch_error(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for which in 1..=2 {
            let p = self.probabilities[which - 1];
            let w = self.probe_distribution(which)?[PROBE_SUCCESS];
            worst = worst.max((w - p).abs());
            if let Some(post) = self.post_success_state(which)? {
                worst = worst.max(vecops::distance(&post, &self.ideal_success_state(which)?));
            } else if p > 0.0 {
                worst = worst.max(p);
            }
        }
        Ok(worst)
    }

    /// Checks both machine invariants within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let g = self.gram_preservation_error();
        if g > tol {
            return Err(Error::Isometry(g));
        }
        let e = self.success_branch_error()?;
        if e > tol {
            return Err(Error::Infeasible(format!("success branch deviates by {e:e}")));
        }
        Ok(())
    }
}

fn slot(which: usize) -> Result<usize> {
    match which {
        1 | 2 => Ok(which - 1),
        _ => Err(Error::Argument(format!("input index must be 1 or 2, got {which}"))),
    }
}

/// Empirical result of repeated probe measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleReport {
    pub which: usize,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    /// `p_i` of the machine.
    pub expected: f64,
    /// Distance of the post-success state from the ideal clone, if any success occurred.
    pub post_state_error: Option<f64>,
}

/// Runs `trials` independent probe measurements on `T_which`.
pub fn sample_prob_clone(machine: &ProbCloneMachine, which: usize, trials: u64, seed: u64) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::Argument("trials must be at least 1".into()));
    }
    let probs = machine.probe_distribution(which)?;
    let mut rng = seeded_rng(seed);
    let mut successes = 0u64;
    for _ in 0..trials {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut outcome = PROBE_DIM - 1;
        for (k, &pk) in probs.iter().enumerate() {
            acc += pk;
            if u < acc {
                outcome = k;
                break;
            }
        }
        if outcome == PROBE_SUCCESS {
            successes += 1;
        }
    }
    let post_state_error = if successes > 0 {
        let post = machine
            .post_success_state(which)?
            .expect("a sampled outcome has nonzero weight");
        let err = vecops::distance(&post, &machine.ideal_success_state(which)?);
        if err > Tolerances::default().norm {
            return Err(Error::Isometry(err));
        }
        Some(err)
    } else {
        None
    };
    Ok(SampleReport {
        which,
        trials,
        successes,
        rate: successes as f64 / trials as f64,
        expected: machine.probabilities[which - 1],
        post_state_error,
    })
}
