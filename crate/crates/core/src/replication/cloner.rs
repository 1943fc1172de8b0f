use serde::Serialize;

use crate::hilbert::{
    entanglement_entropy_raw, partial_trace_raw, vecops, CompositeSpace, LinearExtensionMap, StateVector, Tolerances,
    C64,
};
use crate::{Error, Result};

/// Linear extension of `|k⟩|w⟩ → |k⟩|k⟩|r_k⟩` over the organism basis.
///
/// Space layout: organism (N) ⊗ copy slot (N) ⊗ rejected (R). The nutrient
/// `|w⟩` is a fixed state of the copy ⊗ rejected factors (dimension N·R).
#[derive(Debug, Clone)]
pub struct BasisCloner {
    dim: usize,
    nutrient: StateVector,
    rejected_states: Vec<StateVector>,
    space: CompositeSpace,
    map: LinearExtensionMap,
}

/// Which rejected state the ideal clone `|ψ⟩|ψ⟩|r⟩` is compared against.
#[derive(Debug, Clone, PartialEq)]
pub enum RejectedReference {
    /// `r = r_k`, the rejected state paired with basis index `k`.
    Index(usize),
    /// An arbitrary rejected-factor state.
    Explicit(StateVector),
    /// The `r` maximizing the fidelity.
    Best,
}

impl Default for RejectedReference {
    fn default() -> Self {
        Self::Index(0)
    }
}

/// How far the linear-extension output is from an ideal clone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloneGapReport {
    /// `|⟨ψ ψ r|out⟩|²`
    pub fidelity: f64,
    /// Purity of the organism after tracing out copy and rejected factors.
    pub reduced_purity: f64,
    /// Entropy across organism | copy ⊗ rejected, in bits.
    pub entropy_bits: f64,
    /// `‖out‖`, which is 1 for an isometric cloner.
    pub output_norm: f64,
}

pub fn make_basis_cloner(dim: usize, nutrient: StateVector, rejected_states: Vec<StateVector>) -> Result<BasisCloner> {
    if dim == 0 {
        return Err(Error::Argument("organism dimension must be at least 1".into()));
    }
    if rejected_states.len() != dim {
        return Err(Error::Dimension(format!(
            "{} rejected states supplied for organism dimension {dim}",
            rejected_states.len()
        )));
    }
    let r_dim = rejected_states[0].dim();
    if rejected_states.iter().any(|r| r.dim() != r_dim) {
        return Err(Error::Dimension("rejected states must share one dimension".into()));
    }
    if nutrient.dim() != dim * r_dim {
        return Err(Error::Dimension(format!(
            "nutrient of dimension {} must fill copy ⊗ rejected = {dim}·{r_dim}",
            nutrient.dim()
        )));
    }
    let space = CompositeSpace::new(vec![dim, dim, r_dim])?;
    let total = space.total_dim();
    let domain: Vec<Vec<C64>> = (0..dim)
        .map(|k| vecops::kron(&vecops::basis(dim, k), nutrient.amplitudes()))
        .collect();
    let images: Vec<Vec<C64>> = rejected_states
        .iter()
        .enumerate()
        .map(|(k, r)| vecops::kron(&vecops::basis(dim * dim, k * dim + k), r.amplitudes()))
        .collect();
    let map = LinearExtensionMap::new(total, total, domain, images, Tolerances::default().norm)?;
    Ok(BasisCloner {
        dim,
        nutrient,
        rejected_states,
        space,
        map,
    })
}

impl BasisCloner {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nutrient(&self) -> &StateVector {
        &self.nutrient
    }

    pub fn rejected_states(&self) -> &[StateVector] {
        &self.rejected_states
    }

    pub fn rejected_dim(&self) -> usize {
        self.space.factor_dim(2)
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn map(&self) -> &LinearExtensionMap {
        &self.map
    }

    /// `|ψ⟩|w⟩`
    pub fn input(&self, psi: &StateVector) -> Result<Vec<C64>> {
        self.check(psi)?;
        Ok(vecops::kron(psi.amplitudes(), self.nutrient.amplitudes()))
    }

    /// Linear-extension output `Σ_k ψ_k |k⟩|k⟩|r_k⟩` as raw amplitudes.
    pub fn apply(&self, psi: &StateVector) -> Result<Vec<C64>> {
        self.map.apply(&self.input(psi)?)
    }

    fn check(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "cloner for dimension {} given a state of dimension {}",
                self.dim,
                psi.dim()
            )));
        }
        Ok(())
    }
}

/// Compares the cloner output with `|ψ⟩|ψ⟩|r_0⟩`.
pub fn clone_gap(cloner: &BasisCloner, psi: &StateVector) -> Result<CloneGapReport> {
    clone_gap_with(cloner, psi, &RejectedReference::default())
}

pub fn clone_gap_with(cloner: &BasisCloner, psi: &StateVector, reference: &RejectedReference) -> Result<CloneGapReport> {
    let out = cloner.apply(psi)?;
    let psi_psi = vecops::kron(psi.amplitudes(), psi.amplitudes());
    let r_dim = cloner.rejected_dim();
    let fidelity = match reference {
        RejectedReference::Best => {
            // (⟨ψψ| ⊗ I) out, a vector on the rejected factor
            let mut proj = vec![C64::new(0.0, 0.0); r_dim];
            for (i, a) in psi_psi.iter().enumerate() {
                vecops::axpy(a.conj(), &out[i * r_dim..(i + 1) * r_dim], &mut proj);
            }
            vecops::norm_sqr(&proj)
        }
        other => {
            let r = match other {
                RejectedReference::Index(k) => cloner.rejected_states.get(*k).ok_or_else(|| {
                    Error::Argument(format!("rejected index {k} out of range for dimension {}", cloner.dim))
                })?,
                RejectedReference::Explicit(r) => {
                    if r.dim() != r_dim {
                        return Err(Error::Dimension(format!(
                            "reference rejected state of dimension {} for a rejected factor of dimension {r_dim}",
                            r.dim()
                        )));
                    }
                    r
                }
                RejectedReference::Best => unreachable!(),
            };
            let ideal = vecops::kron(&psi_psi, r.amplitudes());
            vecops::vdot(&ideal, &out).norm_sqr()
        }
    };
    let (rd, rho) = partial_trace_raw(&out, &cloner.space, &[0])?;
    debug_assert_eq!(rd, cloner.dim);
    let reduced_purity = rho.iter().map(|z| z.norm_sqr()).sum();
    let entropy_bits = entanglement_entropy_raw(&out, &cloner.space, &[0])?;
    Ok(CloneGapReport {
        fidelity,
        reduced_purity,
        entropy_bits,
        output_norm: vecops::norm(&out),
    })
}
