use serde::{Deserialize, Serialize};

use super::{check_capacity, vecops, Tolerances, C64};
use crate::{Error, Result};

/// A normalized pure state.
///
/// Serializes as a JSON array of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wraps `amplitudes`, which must already have unit norm.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new_with(amplitudes, &Tolerances::default())
    }

    pub fn new_with(amplitudes: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Argument("state dimension must be at least 1".into()));
        }
        check_capacity(amplitudes.len() as u128)?;
        let norm = vecops::norm(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > tol.norm {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Divides `amplitudes` by their norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vecops::norm(&amplitudes);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Argument(format!(
                "cannot normalize a vector of norm {norm}"
            )));
        }
        let inv = C64::new(1.0 / norm, 0.0);
        Self::new(vecops::scale(inv, &amplitudes))
    }

    /// Normalizes a real amplitude vector.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Argument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        Self::new(vecops::basis(dim, k))
    }

    /// `(|0⟩ + |1⟩ + … + |dim−1⟩)/√dim`
    pub fn uniform(dim: usize) -> Result<Self> {
        Self::from_real(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vecops::norm(&self.amplitudes)
    }

    /// Returns `k` if `|⟨k|ψ⟩| = 1` within `tol`.
    pub fn basis_index(&self, tol: f64) -> Option<usize> {
        self.amplitudes
            .iter()
            .position(|a| (a.norm() - 1.0).abs() <= tol)
    }
}

impl TryFrom<Vec<C64>> for StateVector {
    type Error = Error;

    fn try_from(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(amplitudes)
    }
}

impl From<StateVector> for Vec<C64> {
    fn from(s: StateVector) -> Self {
        s.amplitudes
    }
}

/// `⟨a|b⟩`
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "inner product of dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(vecops::vdot(a.amplitudes(), b.amplitudes()))
}

/// `a ⊗ b`
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    check_capacity(a.dim() as u128 * b.dim() as u128)?;
    Ok(StateVector {
        amplitudes: vecops::kron(a.amplitudes(), b.amplitudes()),
    })
}

/// `a^{⊗m}`
pub fn tensor_power(a: &StateVector, m: usize) -> Result<StateVector> {
    if m == 0 {
        return Err(Error::Argument("tensor power must be at least 1".into()));
    }
    let required = (a.dim() as u128).checked_pow(m.try_into().unwrap_or(u32::MAX));
    check_capacity(required.unwrap_or(u128::MAX))?;
    let mut out = a.amplitudes().to_vec();
    for _ in 1..m {
        out = vecops::kron(&out, a.amplitudes());
    }
    Ok(StateVector { amplitudes: out })
}
