//! Mutation of one copy among `M`, the entangled-versus-unentangled overlap,
//! and the unitarity obstruction to entangling a species with its mutant.

use serde::Serialize;

use crate::hilbert::{apply_on_factor_raw, inner_product, tensor_power, vecops, CompositeSpace, StateVector, UnitaryMatrix, C64};
use crate::{Error, Result};

/// Largest copy count accepted by the closed forms.
pub const MAX_COPIES: u64 = (1 << 31) - 1;

fn check_copies(m: u64) -> Result<()> {
    if m == 0 || m > MAX_COPIES {
        return Err(Error::Argument(format!("copy count {m} must lie in 1..={MAX_COPIES}")));
    }
    Ok(())
}

fn check_s2(s2: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s2) {
        return Err(Error::Argument(format!("s2 = {s2} must lie in [0, 1]")));
    }
    Ok(())
}

/// `|⟨ψ|U|ψ⟩|²`, clamped into [0, 1] against rounding.
pub fn survival_probability(psi: &StateVector, u: &UnitaryMatrix) -> Result<f64> {
    Ok(u.expectation(psi)?.norm_sqr().min(1.0))
}

/// `1/√(M + M(M−1) s2)`
pub fn mutation_normalization(s2: f64, m: u64) -> Result<f64> {
    check_copies(m)?;
    check_s2(s2)?;
    let m = m as f64;
    Ok(1.0 / (m + m * (m - 1.0) * s2).sqrt())
}

/// `M s2 / (1 + (M−1) s2)`
pub fn overlap_entangled_from_s2(s2: f64, m: u64) -> Result<f64> {
    check_copies(m)?;
    check_s2(s2)?;
    let m = m as f64;
    Ok(m * s2 / (1.0 + (m - 1.0) * s2))
}

pub fn overlap_entangled_closed_form(psi: &StateVector, u: &UnitaryMatrix, m: u64) -> Result<f64> {
    overlap_entangled_from_s2(survival_probability(psi, u)?, m)
}

/// Overlap when a single copy evolves alone; independent of `M` and of the slot.
pub fn overlap_unentangled(psi: &StateVector, u: &UnitaryMatrix) -> Result<f64> {
    survival_probability(psi, u)
}

/// `N^(M)(ψ) Σ_j U_j |ψ⟩^{⊗M}`, with `U_j` acting on slot `j`.
pub fn entangled_mutation_state(psi: &StateVector, u: &UnitaryMatrix, m: u64) -> Result<StateVector> {
    check_copies(m)?;
    if u.dim() != psi.dim() {
        return Err(Error::Dimension(format!(
            "unitary of dimension {} on a state of dimension {}",
            u.dim(),
            psi.dim()
        )));
    }
    let slots = usize::try_from(m).map_err(|_| Error::Argument(format!("copy count {m} too large")))?;
    let base = tensor_power(psi, slots)?;
    let space = CompositeSpace::new(vec![psi.dim(); slots])?;
    let mut sum = vec![C64::new(0.0, 0.0); space.total_dim()];
    for j in 0..slots {
        let term = apply_on_factor_raw(u, base.amplitudes(), &space, j)?;
        vecops::axpy(C64::new(1.0, 0.0), &term, &mut sum);
    }
    let n = mutation_normalization(survival_probability(psi, u)?, m)?;
    StateVector::new(vecops::scale(n.into(), &sum))
}

/// `|⟨ψ^{⊗M}|Ψ_f⟩|²` from the explicit tensor construction.
pub fn overlap_entangled_brute_force(psi: &StateVector, u: &UnitaryMatrix, m: u64) -> Result<f64> {
    let fin = entangled_mutation_state(psi, u, m)?;
    let init = tensor_power(psi, m as usize)?;
    Ok(inner_product(&init, &fin)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MutationReport {
    #[serde(rename = "M")]
    pub m: u64,
    pub s2: f64,
    pub overlap_entangled: f64,
    pub overlap_unentangled: f64,
    /// `None` when `s2 = 0`.
    pub ratio: Option<f64>,
    pub normalization: f64,
}

pub fn mutation_report(s2: f64, m: u64) -> Result<MutationReport> {
    let overlap_entangled = overlap_entangled_from_s2(s2, m)?;
    Ok(MutationReport {
        m,
        s2,
        overlap_entangled,
        overlap_unentangled: s2,
        ratio: (s2 > 0.0).then(|| overlap_entangled / s2),
        normalization: mutation_normalization(s2, m)?,
    })
}

pub fn paradox_sweep(psi: &StateVector, u: &UnitaryMatrix, m_values: &[u64]) -> Result<Vec<MutationReport>> {
    paradox_sweep_s2(survival_probability(psi, u)?, m_values)
}

pub fn paradox_sweep_s2(s2: f64, m_values: &[u64]) -> Result<Vec<MutationReport>> {
    if m_values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Argument("copy counts must be sorted ascending".into()));
    }
    m_values.iter().map(|&m| mutation_report(s2, m)).collect()
}

/// Both sides of the two-copy unitarity demand for
/// `|χ⟩|χ⟩ → N(χ)(|χ⟩U|χ⟩ + U|χ⟩|χ⟩)`, χ ∈ {ψ, φ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglingResidual {
    /// `⟨ψ|φ⟩²`
    pub lhs: C64,
    /// `2N(ψ)N(φ)[⟨ψ|φ⟩² + ⟨ψ|U|φ⟩⟨ψ|U†|φ⟩]`
    pub rhs: C64,
    /// `|lhs − rhs|`
    pub residual: f64,
    /// `min_θ |lhs − e^{iθ} rhs| = ||lhs| − |rhs||`
    pub phase_min_residual: f64,
    pub norm_psi: f64,
    pub norm_phi: f64,
    /// `⟨ψ|U|φ⟩⟨ψ|U†|φ⟩`
    pub cross_term: C64,
    /// Inner product of the two inputs in the two-copy space.
    pub pre_inner: C64,
    /// Inner product of the two outputs in the two-copy space.
    pub post_inner: C64,
}

/// `|χ⟩U|χ⟩ + U|χ⟩|χ⟩` and its normalization `1/√(2(1+|⟨χ|U|χ⟩|²))`.
fn two_copy_post(chi: &StateVector, u: &UnitaryMatrix) -> Result<(Vec<C64>, f64)> {
    let uchi = u.apply_raw(chi.amplitudes());
    let mut v = vecops::kron(chi.amplitudes(), &uchi);
    vecops::axpy(C64::new(1.0, 0.0), &vecops::kron(&uchi, chi.amplitudes()), &mut v);
    let n = 1.0 / (2.0 * (1.0 + survival_probability(chi, u)?)).sqrt();
    Ok((vecops::scale(n.into(), &v), n))
}

pub fn entangling_unitarity_residual(psi: &StateVector, phi: &StateVector, u: &UnitaryMatrix) -> Result<EntanglingResidual> {
    if psi.dim() != phi.dim() || u.dim() != psi.dim() {
        return Err(Error::Dimension(format!(
            "states of dimension {} and {} with a unitary of dimension {}",
            psi.dim(),
            phi.dim(),
            u.dim()
        )));
    }
    let s = inner_product(psi, phi)?;
    let lhs = s * s;
    let (post_psi, norm_psi) = two_copy_post(psi, u)?;
    let (post_phi, norm_phi) = two_copy_post(phi, u)?;
    let cross_term = u.matrix_element(psi, phi)? * u.adjoint().matrix_element(psi, phi)?;
    let rhs = 2.0 * norm_psi * norm_phi * (lhs + cross_term);
    let pre = |x: &StateVector| vecops::kron(x.amplitudes(), x.amplitudes());
    Ok(EntanglingResidual {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        phase_min_residual: (lhs.norm() - rhs.norm()).abs(),
        norm_psi,
        norm_phi,
        cross_term,
        pre_inner: vecops::vdot(&pre(psi), &pre(phi)),
        post_inner: vecops::vdot(&post_psi, &post_phi),
    })
}

/// `U` with `U|0⟩ = a|0⟩ + b|1⟩`, `U|1⟩ = a*|1⟩ − b*|0⟩`.
pub fn qubit_mutation_unitary(a: C64, b: C64) -> Result<UnitaryMatrix> {
    let dev = (a.norm_sqr() + b.norm_sqr() - 1.0).abs();
    if dev > 1e-10 {
        return Err(Error::Argument(format!("|a|² + |b|² deviates from 1 by {dev:e}")));
    }
    UnitaryMatrix::new(2, vec![a, -b.conj(), b, a.conj()])
}

/// The residual for `ψ = |0⟩`, `φ = |1⟩` under [`qubit_mutation_unitary`].
pub fn qubit_orthogonal_example(a: C64, b: C64) -> Result<EntanglingResidual> {
    let u = qubit_mutation_unitary(a, b)?;
    entangling_unitarity_residual(&StateVector::basis(2, 0)?, &StateVector::basis(2, 1)?, &u)
}
