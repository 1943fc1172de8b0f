use serde::Serialize;

use super::density::{entropy_from_spectrum, hermitian_eigenvalues};
use super::{check_capacity, DensityMatrix, StateVector, Tolerances, UnitaryMatrix, C64};
use crate::{Error, Result};

/// Ordered list of tensor factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeSpace {
    factor_dims: Vec<usize>,
    total_dim: usize,
}

impl CompositeSpace {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::Argument("a composite space needs at least one factor".into()));
        }
        if factor_dims.contains(&0) {
            return Err(Error::Argument("factor dimensions must be positive".into()));
        }
        let total = factor_dims
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
            .unwrap_or(u128::MAX);
        check_capacity(total)?;
        Ok(Self {
            factor_dims,
            total_dim: total as usize,
        })
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn factor_dim(&self, slot: usize) -> usize {
        self.factor_dims[slot]
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Flat index of the product basis vector with the given per-factor digits.
    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factor_dims.len());
        digits
            .iter()
            .zip(&self.factor_dims)
            .fold(0, |acc, (&d, &n)| acc * n + d)
    }

    fn check_state_len(&self, len: usize) -> Result<()> {
        if len != self.total_dim {
            return Err(Error::Dimension(format!(
                "state of dimension {len} does not live in a space of dimension {}",
                self.total_dim
            )));
        }
        Ok(())
    }

    fn check_subset(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(Error::Argument(format!("repeated factor index in {set:?}")));
        }
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.num_factors()) {
            return Err(Error::Argument(format!(
                "factor index {bad} out of range for {} factors",
                self.num_factors()
            )));
        }
        Ok(sorted)
    }
}

/// Applies `u` to tensor factor `slot` and the identity elsewhere, on a raw vector.
pub fn apply_on_factor_raw(
    u: &UnitaryMatrix,
    amps: &[C64],
    space: &CompositeSpace,
    slot: usize,
) -> Result<Vec<C64>> {
    if slot >= space.num_factors() {
        return Err(Error::Dimension(format!(
            "slot {slot} out of range for {} factors",
            space.num_factors()
        )));
    }
    let d = space.factor_dim(slot);
    if u.dim() != d {
        return Err(Error::Dimension(format!(
            "operator of dimension {} on factor of dimension {d}",
            u.dim()
        )));
    }
    space.check_state_len(amps.len())?;
    let right: usize = space.factor_dims()[slot + 1..].iter().product();
    let left = amps.len() / (d * right);
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for l in 0..left {
        for r in 0..right {
            let base = l * d * right + r;
            for i in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..d {
                    acc += u.get(i, j) * amps[base + j * right];
                }
                out[base + i * right] = acc;
            }
        }
    }
    Ok(out)
}

/// Applies `u` to tensor factor `slot` of `s`.
pub fn apply_on_factor(
    u: &UnitaryMatrix,
    s: &StateVector,
    space: &CompositeSpace,
    slot: usize,
) -> Result<StateVector> {
    StateVector::new(apply_on_factor_raw(u, s.amplitudes(), space, slot)?)
}

/// Reshapes `amps` into a `kept × traced` matrix (row-major); returns it and the kept dimension.
fn split(amps: &[C64], space: &CompositeSpace, keep: &[usize]) -> (Vec<C64>, usize, usize) {
    let dims = space.factor_dims();
    let kept_dim: usize = keep.iter().map(|&i| dims[i]).product();
    let traced_dim = space.total_dim() / kept_dim;
    let kept_mask: Vec<bool> = (0..dims.len()).map(|i| keep.contains(&i)).collect();
    let mut m = vec![C64::new(0.0, 0.0); amps.len()];
    let mut digits = vec![0usize; dims.len()];
    for &a in amps {
        let (mut ki, mut ti) = (0usize, 0usize);
        for (f, &dgt) in digits.iter().enumerate() {
            if kept_mask[f] {
                ki = ki * dims[f] + dgt;
            } else {
                ti = ti * dims[f] + dgt;
            }
        }
        m[ki * traced_dim + ti] = a;
        // increment mixed-radix counter
        for f in (0..dims.len()).rev() {
            digits[f] += 1;
            if digits[f] < dims[f] {
                break;
            }
            digits[f] = 0;
        }
    }
    (m, kept_dim, traced_dim)
}

fn gram_rows(m: &[C64], rows: usize, cols: usize) -> Vec<C64> {
    let mut rho = vec![C64::new(0.0, 0.0); rows * rows];
    for i in 0..rows {
        let ri = &m[i * cols..(i + 1) * cols];
        for j in i..rows {
            let rj = &m[j * cols..(j + 1) * cols];
            let v: C64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
            rho[i * rows + j] = v;
            rho[j * rows + i] = v.conj();
        }
    }
    rho
}

/// Reduced density matrix of a raw vector on the factors in `keep`,
/// returned as row-major entries together with its dimension.
///
/// The vector need not be normalized; the trace equals its squared norm.
pub fn partial_trace_raw(
    amps: &[C64],
    space: &CompositeSpace,
    keep: &[usize],
) -> Result<(usize, Vec<C64>)> {
    if keep.is_empty() {
        return Err(Error::Argument("partial trace needs a nonempty keep set".into()));
    }
    space.check_state_len(amps.len())?;
    let keep = space.check_subset(keep)?;
    let (m, kd, td) = split(amps, space, &keep);
    Ok((kd, gram_rows(&m, kd, td)))
}

/// Reduced state of `s` on the factors in `keep` (kept in ascending factor order).
pub fn partial_trace(
    s: &StateVector,
    space: &CompositeSpace,
    keep: &[usize],
) -> Result<DensityMatrix> {
    let (dim, entries) = partial_trace_raw(s.amplitudes(), space, keep)?;
    DensityMatrix::new_with(dim, entries, &Tolerances::default())
}

/// Von Neumann entropy (bits) across the cut `bipartition | rest` of a raw,
/// unit-norm vector.
pub fn entanglement_entropy_raw(
    amps: &[C64],
    space: &CompositeSpace,
    bipartition: &[usize],
) -> Result<f64> {
    space.check_state_len(amps.len())?;
    let part = space.check_subset(bipartition)?;
    if part.is_empty() || part.len() == space.num_factors() {
        return Err(Error::Argument(format!(
            "bipartition {bipartition:?} must be a proper nonempty subset of {} factors",
            space.num_factors()
        )));
    }
    // Both reduced states of a pure state share their nonzero spectrum; diagonalize the smaller.
    let (m, kd, td) = split(amps, space, &part);
    let spectrum = if kd <= td {
        hermitian_eigenvalues(kd, &gram_rows(&m, kd, td))
    } else {
        let mut t = vec![C64::new(0.0, 0.0); m.len()];
        for i in 0..kd {
            for j in 0..td {
                t[j * kd + i] = m[i * td + j];
            }
        }
        // rows of the transpose give the conjugate of the complementary reduced state
        hermitian_eigenvalues(td, &gram_rows(&t, td, kd))
    };
    Ok(entropy_from_spectrum(&spectrum))
}

/// Von Neumann entropy in bits of the reduced state on `bipartition`.
pub fn entanglement_entropy(
    s: &StateVector,
    space: &CompositeSpace,
    bipartition: &[usize],
) -> Result<f64> {
    entanglement_entropy_raw(s.amplitudes(), space, bipartition)
}
