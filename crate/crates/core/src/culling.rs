//! Culling (deletion) of replicas and the ancilla-assisted clonability test.
//!
//! The basis culler is the linear extension of `|k⟩|k⟩|r⟩ → |k⟩|w_k⟩`; on a
//! superposition its diagonal branch carries `Σ_k ψ_k² |k⟩|w_k⟩` and the
//! cross terms `ψ_k ψ_l` land on the off-diagonal targets `|Φ_kl⟩`, so the
//! output never equals `|ψ⟩|w⟩` unless `ψ` is a basis state.

use serde::Serialize;

use crate::hilbert::{
    apply_on_factor_raw, inner_product, vecops, CompositeSpace, LinearExtensionMap, StateVector, Tolerances,
    UnitaryMatrix, C64,
};
use crate::{Error, Result};

/// Isometric linear extension defined on all `|k⟩|l⟩|r⟩`.
///
/// Space layout: organism (N) ⊗ copy (N) ⊗ ancilla (A). Diagonal targets
/// are `|k⟩|w_k⟩` padded with `|0⟩` on the ancilla factor, so input and
/// output share one space.
#[derive(Debug, Clone)]
pub struct BasisCuller {
    dim: usize,
    ancilla: StateVector,
    blanks: Vec<StateVector>,
    pad: StateVector,
    offdiag: Vec<((usize, usize), Vec<C64>)>,
    space: CompositeSpace,
    map: LinearExtensionMap,
}

/// How far the culler output is from `|ψ⟩|w⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CullGapReport {
    /// `|⟨ψ w pad|out⟩|²`
    pub fidelity_vs_ideal: f64,
    /// `Σ_k |ψ_k|⁴`
    pub diagonal_weight: f64,
    /// `Σ_{k≠l} |ψ_k|²|ψ_l|²`
    pub offdiag_weight: f64,
    /// `‖M†(M x) − x‖` for the input `x = |ψ⟩|ψ⟩|r⟩`.
    pub recovery_error: f64,
    pub output_norm: f64,
}

fn offdiag_pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |k| (0..dim).filter(move |&l| l != k).map(move |l| (k, l)))
}

fn check_blanks(dim: usize, ancilla: &StateVector, blanks: &[StateVector]) -> Result<()> {
    if dim == 0 {
        return Err(Error::Argument("organism dimension must be at least 1".into()));
    }
    if blanks.len() != dim {
        return Err(Error::Dimension(format!(
            "{} blank states supplied for organism dimension {dim}",
            blanks.len()
        )));
    }
    if let Some(w) = blanks.iter().find(|w| w.dim() != dim) {
        return Err(Error::Dimension(format!(
            "blank state of dimension {} must live on the copy factor of dimension {dim}",
            w.dim()
        )));
    }
    if ancilla.dim() == 0 {
        return Err(Error::Argument("ancilla dimension must be at least 1".into()));
    }
    Ok(())
}

fn diagonal_targets(dim: usize, blanks: &[StateVector], pad: &StateVector) -> Vec<Vec<C64>> {
    blanks
        .iter()
        .enumerate()
        .map(|(k, w)| vecops::kron(&vecops::kron(&vecops::basis(dim, k), w.amplitudes()), pad.amplitudes()))
        .collect()
}

/// Orthonormal off-diagonal targets orthogonal to every diagonal target.
///
/// Product basis vectors with a nonzero ancilla digit come first, so for
/// ancilla dimension ≥ 2 the targets are `|k⟩|l⟩|1⟩`.
fn default_offdiag(space: &CompositeSpace, diag: &[Vec<C64>]) -> Result<Vec<Vec<C64>>> {
    let (dim, a_dim) = (space.factor_dim(0), space.factor_dim(2));
    let needed = dim * (dim - 1);
    let mut candidates: Vec<usize> = Vec::with_capacity(space.total_dim());
    if a_dim >= 2 {
        candidates.extend(offdiag_pairs(dim).map(|(k, l)| space.index_of(&[k, l, 1])));
    }
    for idx in 0..space.total_dim() {
        if !candidates.contains(&idx) {
            candidates.push(idx);
        }
    }
    let mut basis: Vec<Vec<C64>> = diag.to_vec();
    let mut chosen = Vec::with_capacity(needed);
    for idx in candidates {
        if chosen.len() == needed {
            break;
        }
        let r = vecops::orthogonalize(&vecops::basis(space.total_dim(), idx), &basis);
        let n = vecops::norm(&r);
        if n > 1e-6 {
            let q = vecops::scale((1.0 / n).into(), &r);
            basis.push(q.clone());
            chosen.push(q);
        }
    }
    if chosen.len() < needed {
        return Err(Error::Capacity {
            required: (dim * dim) as u128,
            limit: space.total_dim(),
        });
    }
    Ok(chosen)
}

/// Culler with the default off-diagonal targets.
pub fn make_basis_culler(dim: usize, ancilla: StateVector, blanks: Vec<StateVector>) -> Result<BasisCuller> {
    build(dim, ancilla, blanks, None)
}

/// Culler with caller-chosen `|Φ_kl⟩`, ordered by `(k, l)`, `k ≠ l`, lexicographically.
pub fn make_basis_culler_with_offdiag(
    dim: usize,
    ancilla: StateVector,
    blanks: Vec<StateVector>,
    offdiag_targets: Vec<StateVector>,
) -> Result<BasisCuller> {
    build(dim, ancilla, blanks, Some(offdiag_targets))
}

fn build(dim: usize, ancilla: StateVector, blanks: Vec<StateVector>, offdiag: Option<Vec<StateVector>>) -> Result<BasisCuller> {
    check_blanks(dim, &ancilla, &blanks)?;
    let space = CompositeSpace::new(vec![dim, dim, ancilla.dim()])?;
    let total = space.total_dim();
    if total < dim * dim {
        return Err(Error::Capacity {
            required: (dim * dim) as u128,
            limit: total,
        });
    }
    let pad = StateVector::basis(ancilla.dim(), 0)?;
    let diag = diagonal_targets(dim, &blanks, &pad);
    let off: Vec<Vec<C64>> = match offdiag {
        None => default_offdiag(&space, &diag)?,
        Some(v) => {
            if v.len() != dim * (dim - 1) {
                return Err(Error::Dimension(format!(
                    "{} off-diagonal targets supplied, {} needed",
                    v.len(),
                    dim * (dim - 1)
                )));
            }
            if let Some(t) = v.iter().find(|t| t.dim() != total) {
                return Err(Error::Dimension(format!(
                    "off-diagonal target of dimension {} in a space of dimension {total}",
                    t.dim()
                )));
            }
            v.into_iter().map(StateVector::into_amplitudes).collect()
        }
    };
    let mut domain = Vec::with_capacity(dim * dim);
    let mut images = Vec::with_capacity(dim * dim);
    let mut off_iter = off.iter();
    let mut offdiag_labeled = Vec::with_capacity(off.len());
    for (k, diag_k) in diag.iter().enumerate() {
        for l in 0..dim {
            domain.push(vecops::kron(&vecops::basis(dim * dim, k * dim + l), ancilla.amplitudes()));
            if k == l {
                images.push(diag_k.clone());
            } else {
                let t = off_iter.next().expect("counted above").clone();
                offdiag_labeled.push(((k, l), t.clone()));
                images.push(t);
            }
        }
    }
    let map = LinearExtensionMap::new(total, total, domain, images, Tolerances::default().norm)?;
    Ok(BasisCuller {
        dim,
        ancilla,
        blanks,
        pad,
        offdiag: offdiag_labeled,
        space,
        map,
    })
}

impl BasisCuller {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ancilla(&self) -> &StateVector {
        &self.ancilla
    }

    pub fn blanks(&self) -> &[StateVector] {
        &self.blanks
    }

    /// Reference state padding the diagonal targets on the ancilla factor.
    pub fn pad(&self) -> &StateVector {
        &self.pad
    }

    pub fn offdiag_targets(&self) -> &[((usize, usize), Vec<C64>)] {
        &self.offdiag
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn map(&self) -> &LinearExtensionMap {
        &self.map
    }

    /// `|ψ⟩|ψ⟩|r⟩`
    pub fn input(&self, psi: &StateVector) -> Result<Vec<C64>> {
        if psi.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "culler for dimension {} given a state of dimension {}",
                self.dim,
                psi.dim()
            )));
        }
        let pp = vecops::kron(psi.amplitudes(), psi.amplitudes());
        Ok(vecops::kron(&pp, self.ancilla.amplitudes()))
    }

    /// `Σ_k ψ_k² |k⟩|w_k⟩ + Σ_{k≠l} ψ_k ψ_l |Φ_kl⟩` as raw amplitudes.
    pub fn apply(&self, psi: &StateVector) -> Result<Vec<C64>> {
        self.map.apply(&self.input(psi)?)
    }

    /// Inverse isometry on the image span.
    pub fn recover(&self, output: &[C64]) -> Result<Vec<C64>> {
        self.map.inverse(output)
    }
}

pub fn cull_gap(culler: &BasisCuller, psi: &StateVector, ideal_blank: &StateVector) -> Result<CullGapReport> {
    if ideal_blank.dim() != culler.dim {
        return Err(Error::Dimension(format!(
            "ideal blank of dimension {} for a copy factor of dimension {}",
            ideal_blank.dim(),
            culler.dim
        )));
    }
    let input = culler.input(psi)?;
    let out = culler.map.apply(&input)?;
    let ideal = vecops::kron(
        &vecops::kron(psi.amplitudes(), ideal_blank.amplitudes()),
        culler.pad.amplitudes(),
    );
    let fidelity = vecops::vdot(&ideal, &out).norm_sqr();
    let diagonal_weight: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr().powi(2)).sum();
    let p: f64 = psi.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    let offdiag_weight = p * p - diagonal_weight;
    let recovered = culler.map.inverse(&out)?;
    Ok(CullGapReport {
        fidelity_vs_ideal: fidelity,
        diagonal_weight,
        offdiag_weight,
        recovery_error: vecops::distance(&recovered, &input),
        output_norm: vecops::norm(&out),
    })
}

/// Result of the ancilla-assisted clonability test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramFeasibility {
    pub feasible: bool,
    /// `max_{k,l} |⟨a_k|a_l⟩ − ⟨ψ_k|ψ_l⟩|`
    pub max_residual: f64,
    pub residuals: Vec<Vec<f64>>,
    /// Explicit cloner, present when feasible.
    pub construction: Option<JozsaConstruction>,
}

/// A unitary `W` on the ancilla with `W|a_k⟩ = |ψ_k⟩`; `I ⊗ W` clones the family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JozsaConstruction {
    pub transport: UnitaryMatrix,
    /// `max_k ‖W a_k − ψ_k‖`
    pub transport_error: f64,
    /// `max_k ‖(I⊗W)(ψ_k⊗a_k) − ψ_k⊗ψ_k‖`
    pub clone_error: f64,
}

pub fn jozsa_clonability_check(states: &[StateVector], ancillas: &[StateVector]) -> Result<GramFeasibility> {
    jozsa_clonability_check_with(states, ancillas, &Tolerances::default())
}

/// Tests whether `|ψ_k⟩|a_k⟩ → |ψ_k⟩|ψ_k⟩` is realizable by a unitary.
///
/// With a pure fixed ancilla family and no orthogonal pairs among the
/// `ψ_k`, inner-product preservation reads `⟨ψ_k|ψ_l⟩⟨a_k|a_l⟩ = ⟨ψ_k|ψ_l⟩²`,
/// i.e. the two Gram matrices must coincide, which is also the condition for
/// a unitary `a_k → ψ_k`. When feasible that unitary is built and applied to
/// the ancilla slot.
pub fn jozsa_clonability_check_with(
    states: &[StateVector],
    ancillas: &[StateVector],
    tol: &Tolerances,
) -> Result<GramFeasibility> {
    if states.len() != ancillas.len() {
        return Err(Error::Argument(format!(
            "{} states but {} ancillas",
            states.len(),
            ancillas.len()
        )));
    }
    if states.len() < 2 {
        return Err(Error::Argument("the family needs at least two states".into()));
    }
    let d = states[0].dim();
    if states.iter().chain(ancillas).any(|s| s.dim() != d) {
        return Err(Error::Dimension(format!(
            "all states and ancillas must share dimension {d}"
        )));
    }
    let n = states.len();
    for k in 0..n {
        for l in k + 1..n {
            let ov = inner_product(&states[k], &states[l])?.norm();
            if ov <= tol.overlap_floor {
                return Err(Error::Domain(format!(
                    "states {k} and {l} are orthogonal (|overlap| = {ov:e}); the family must contain no orthogonal pairs"
                )));
            }
        }
    }
    let mut residuals = vec![vec![0.0; n]; n];
    let mut max_residual = 0.0f64;
    for k in 0..n {
        for l in 0..n {
            let r = (inner_product(&ancillas[k], &ancillas[l])? - inner_product(&states[k], &states[l])?).norm();
            residuals[k][l] = r;
            max_residual = max_residual.max(r);
        }
    }
    let feasible = max_residual <= tol.gram;
    let construction = if feasible {
        Some(construct(states, ancillas)?)
    } else {
        None
    };
    Ok(GramFeasibility {
        feasible,
        max_residual,
        residuals,
        construction,
    })
}

/// Extends an orthonormal set to a full basis of `C^dim` with standard basis vectors.
fn complete_basis(mut basis: Vec<Vec<C64>>, dim: usize) -> Vec<Vec<C64>> {
    for idx in 0..dim {
        if basis.len() == dim {
            break;
        }
        let r = vecops::orthogonalize(&vecops::basis(dim, idx), &basis);
        let n = vecops::norm(&r);
        if n > 1e-6 {
            basis.push(vecops::scale((1.0 / n).into(), &r));
        }
    }
    basis
}

fn construct(states: &[StateVector], ancillas: &[StateVector]) -> Result<JozsaConstruction> {
    let d = states[0].dim();
    // Gram-Schmidt on the ancillas, replaying the same coefficients on the targets.
    let mut from: Vec<Vec<C64>> = Vec::new();
    let mut to: Vec<Vec<C64>> = Vec::new();
    for (a, psi) in ancillas.iter().zip(states) {
        let mut r = a.amplitudes().to_vec();
        let mut rt = psi.amplitudes().to_vec();
        for (q, qt) in from.iter().zip(&to) {
            let c = vecops::vdot(q, &r);
            vecops::axpy(-c, q, &mut r);
            vecops::axpy(-c, qt, &mut rt);
        }
        let n = vecops::norm(&r);
        if n > 1e-7 {
            from.push(vecops::scale((1.0 / n).into(), &r));
            // re-orthonormalize so W is unitary to rounding even with a small Gram residual
            let rt = vecops::orthogonalize(&rt, &to);
            let nt = vecops::norm(&rt);
            to.push(vecops::scale((1.0 / nt).into(), &rt));
        }
    }
    let from = complete_basis(from, d);
    let to = complete_basis(to, d);
    let mut entries = vec![C64::new(0.0, 0.0); d * d];
    for (q, qt) in from.iter().zip(&to) {
        for i in 0..d {
            for m in 0..d {
                entries[i * d + m] += qt[i] * q[m].conj();
            }
        }
    }
    let transport = UnitaryMatrix::new(d, entries)?;
    let space = CompositeSpace::new(vec![d, d])?;
    let mut transport_error = 0.0f64;
    let mut clone_error = 0.0f64;
    for (a, psi) in ancillas.iter().zip(states) {
        transport_error = transport_error.max(vecops::distance(&transport.apply_raw(a.amplitudes()), psi.amplitudes()));
        let joint = vecops::kron(psi.amplitudes(), a.amplitudes());
        let cloned = apply_on_factor_raw(&transport, &joint, &space, 1)?;
        clone_error = clone_error.max(vecops::distance(&cloned, &vecops::kron(psi.amplitudes(), psi.amplitudes())));
    }
    Ok(JozsaConstruction {
        transport,
        transport_error,
        clone_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{random_state_from, random_unitary_from, seeded_rng};
    use approx::assert_abs_diff_eq;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn qubit_culler(blanks: Vec<StateVector>) -> BasisCuller {
        make_basis_culler(2, StateVector::basis(2, 0).unwrap(), blanks).unwrap()
    }

    fn shared_blank() -> BasisCuller {
        let w = StateVector::basis(2, 0).unwrap();
        qubit_culler(vec![w.clone(), w])
    }

    #[test]
    fn defining_cases() {
        let cul = shared_blank();
        let sp = cul.space().clone();
        let out = cul.map().apply(&vecops::basis(8, sp.index_of(&[0, 0, 0]))).unwrap();
        assert!(vecops::distance(&out, &vecops::basis(8, sp.index_of(&[0, 0, 0]))).abs() < 1e-15);
        let out = cul.map().apply(&vecops::basis(8, sp.index_of(&[0, 1, 0]))).unwrap();
        assert_eq!(cul.offdiag_targets()[0].0, (0, 1));
        assert!(vecops::distance(&out, &cul.offdiag_targets()[0].1) < 1e-15);
        assert!(vecops::distance(&out, &vecops::basis(8, sp.index_of(&[0, 1, 1]))) < 1e-15);
    }

    #[test]
    fn superposition_follows_linearity() {
        // ½(|0⟩|w_0⟩ + |1⟩|w_1⟩)|pad⟩ + ½(|Φ_01⟩ + |Φ_10⟩)
        let cul = shared_blank();
        let sp = cul.space().clone();
        let out = cul.apply(&StateVector::uniform(2).unwrap()).unwrap();
        let mut expect = vec![c(0.0); 8];
        for idx in [[0, 0, 0], [1, 0, 0], [0, 1, 1], [1, 0, 1]] {
            expect[sp.index_of(&idx)] = c(0.5);
        }
        assert!(vecops::distance(&out, &expect) < 1e-15);
    }

    #[test]
    fn gap_examples() {
        let w0 = StateVector::basis(2, 0).unwrap();
        let w1 = StateVector::basis(2, 1).unwrap();
        let plus = StateVector::uniform(2).unwrap();

        let rep = cull_gap(&shared_blank(), &StateVector::basis(2, 0).unwrap(), &w0).unwrap();
        assert_abs_diff_eq!(rep.fidelity_vs_ideal, 1.0, epsilon = 1e-12);

        let rep = cull_gap(&shared_blank(), &plus, &w0).unwrap();
        assert_abs_diff_eq!(rep.fidelity_vs_ideal, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.diagonal_weight, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rep.offdiag_weight, 0.5, epsilon = 1e-15);

        let rep = cull_gap(&qubit_culler(vec![w0.clone(), w1]), &plus, &w0).unwrap();
        assert_abs_diff_eq!(rep.fidelity_vs_ideal, 0.125, epsilon = 1e-12);
        assert!(rep.recovery_error < 1e-12);
    }

    #[test]
    fn single_level_ancilla_uses_gram_schmidt_complement() {
        let mut rng = seeded_rng(4);
        let blanks: Vec<_> = (0..3).map(|_| random_state_from(&mut rng, 3)).collect();
        let cul = make_basis_culler(3, StateVector::basis(1, 0).unwrap(), blanks).unwrap();
        assert_eq!(cul.offdiag_targets().len(), 6);
        let psi = random_state_from(&mut rng, 3);
        let rep = cull_gap(&cul, &psi, &cul.blanks()[0].clone()).unwrap();
        assert_abs_diff_eq!(rep.output_norm, 1.0, epsilon = 1e-10);
        assert!(rep.recovery_error < 1e-10);
    }

    #[test]
    fn custom_offdiag_targets_are_validated() {
        let w = StateVector::basis(2, 0).unwrap();
        let r = StateVector::basis(2, 0).unwrap();
        // Φ_01 = Φ_10 breaks orthonormality
        let t = StateVector::basis(8, 7).unwrap();
        assert!(matches!(
            make_basis_culler_with_offdiag(2, r.clone(), vec![w.clone(), w.clone()], vec![t.clone(), t.clone()]),
            Err(Error::Isometry(_))
        ));
        // Φ overlapping a diagonal target
        assert!(matches!(
            make_basis_culler_with_offdiag(2, r.clone(), vec![w.clone(), w.clone()], vec![StateVector::basis(8, 0).unwrap(), t.clone()]),
            Err(Error::Isometry(_))
        ));
        let ok = make_basis_culler_with_offdiag(2, r, vec![w.clone(), w], vec![StateVector::basis(8, 5).unwrap(), t]);
        assert!(ok.is_ok());
    }

    #[test]
    fn dimension_errors() {
        let w = StateVector::basis(2, 0).unwrap();
        let r = StateVector::basis(2, 0).unwrap();
        assert!(matches!(make_basis_culler(2, r.clone(), vec![w.clone()]), Err(Error::Dimension(_))));
        assert!(matches!(
            make_basis_culler(2, r, vec![w.clone(), StateVector::basis(3, 0).unwrap()]),
            Err(Error::Dimension(_))
        ));
        assert!(cull_gap(&shared_blank(), &StateVector::basis(3, 0).unwrap(), &w).is_err());
        assert!(cull_gap(&shared_blank(), &w, &StateVector::basis(3, 0).unwrap()).is_err());
    }

    #[test]
    fn jozsa_examples() {
        let mut rng = seeded_rng(21);
        let states: Vec<_> = (0..3).map(|_| random_state_from(&mut rng, 3)).collect();

        let res = jozsa_clonability_check(&states, &states).unwrap();
        assert!(res.feasible);
        assert!(res.max_residual < 1e-15);
        let con = res.construction.unwrap();
        assert!(con.transport_error < 1e-10 && con.clone_error < 1e-10);

        let a = random_state_from(&mut rng, 3);
        let res = jozsa_clonability_check(&states, &vec![a; 3]).unwrap();
        assert!(!res.feasible);
        assert!(res.construction.is_none());

        let theta: f64 = 0.4;
        let psi1 = StateVector::basis(2, 0).unwrap();
        let psi2 = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let a1 = StateVector::basis(2, 0).unwrap();
        let a2 = StateVector::new(vec![C64::from_polar(0.6, theta), c(0.8)]).unwrap();
        let res = jozsa_clonability_check(&[psi1, psi2], &[a1, a2]).unwrap();
        assert!(!res.feasible);
        let expect = 0.6 * (c(1.0) - C64::from_polar(1.0, theta)).norm();
        assert_abs_diff_eq!(res.max_residual, expect, epsilon = 1e-14);
    }

    #[test]
    fn jozsa_transported_family_is_feasible() {
        let mut rng = seeded_rng(5);
        for n in 2..6 {
            let states: Vec<_> = (0..n).map(|_| random_state_from(&mut rng, 3)).collect();
            let v = random_unitary_from(&mut rng, 3);
            let anc: Vec<_> = states.iter().map(|s| v.adjoint().apply(s).unwrap()).collect();
            let res = jozsa_clonability_check(&states, &anc).unwrap();
            assert!(res.feasible, "n = {n}, residual {}", res.max_residual);
            let con = res.construction.unwrap();
            assert!(con.clone_error < 1e-9, "clone error {}", con.clone_error);
        }
    }

    #[test]
    fn random_superpositions_never_cull() {
        let mut rng = seeded_rng(1234);
        for trial in 0..1200 {
            let d = 2 + trial % 3;
            let blanks: Vec<_> = (0..d).map(|_| random_state_from(&mut rng, d)).collect();
            let w = blanks[0].clone();
            let cul = make_basis_culler(d, random_state_from(&mut rng, 2), blanks).unwrap();
            let psi = random_state_from(&mut rng, d);
            let rep = cull_gap(&cul, &psi, &w).unwrap();
            assert!(rep.fidelity_vs_ideal < 1.0 - 1e-6, "trial {trial}: {}", rep.fidelity_vs_ideal);
            assert_abs_diff_eq!(rep.diagonal_weight + rep.offdiag_weight, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(rep.output_norm, 1.0, epsilon = 1e-10);
            assert!(rep.recovery_error < 1e-10);
        }
    }

    #[test]
    fn basis_states_cull_perfectly() {
        let mut rng = seeded_rng(2);
        for d in 2..5 {
            let blanks: Vec<_> = (0..d).map(|_| random_state_from(&mut rng, d)).collect();
            let cul = make_basis_culler(d, StateVector::basis(2, 1).unwrap(), blanks.clone()).unwrap();
            for k in 0..d {
                let rep = cull_gap(&cul, &StateVector::basis(d, k).unwrap(), &blanks[k]).unwrap();
                assert_abs_diff_eq!(rep.fidelity_vs_ideal, 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn replacing_one_ancilla_breaks_feasibility() {
        let mut rng = seeded_rng(77);
        for n in 2..5 {
            let states: Vec<_> = (0..n).map(|_| random_state_from(&mut rng, 3)).collect();
            assert!(jozsa_clonability_check(&states, &states).unwrap().feasible);
            let fixed = random_state_from(&mut rng, 3);
            for k in 0..n {
                let mut anc = states.clone();
                anc[k] = fixed.clone();
                assert!(!jozsa_clonability_check(&states, &anc).unwrap().feasible);
            }
        }
    }

    #[test]
    fn jozsa_argument_errors() {
        let z = StateVector::basis(2, 0).unwrap();
        let o = StateVector::basis(2, 1).unwrap();
        assert!(matches!(
            jozsa_clonability_check(&[z.clone(), o.clone()], &[z.clone(), o.clone()]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            jozsa_clonability_check(&[z.clone()], &[z.clone()]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            jozsa_clonability_check(&[z.clone(), StateVector::uniform(2).unwrap()], &[z.clone()]),
            Err(Error::Argument(_))
        ));
    }
}
