use serde::{Deserialize, Serialize};

use super::{vecops, StateVector, Tolerances, C64};
use crate::{Error, Result};

/// A square complex matrix with `U†U = UU† = I`.
///
/// Stored row-major. Serializes as a JSON array of rows, each row an array
/// of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<C64>>", into = "Vec<Vec<C64>>")]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<C64>,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn matmul(dim: usize, a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

fn adjoint_entries(dim: usize, a: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

fn identity_deviation(dim: usize, m: &[C64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((m[i * dim + j] - target).norm());
        }
    }
    worst
}

impl UnitaryMatrix {
    /// Validates `entries` (row-major, `dim × dim`) as unitary.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::new_with(dim, entries, &Tolerances::default())
    }

    pub fn new_with(dim: usize, entries: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Argument("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let m = Self { dim, entries };
        let dev = m.unitarity_deviation();
        if dev.is_nan() || dev > tol.unitary {
            return Err(Error::NotUnitary(dev));
        }
        Ok(m)
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let dim = columns.len();
        if columns.iter().any(|c| c.len() != dim) {
            return Err(Error::Dimension("columns must form a square matrix".into()));
        }
        let mut entries = vec![ZERO; dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                entries[i * dim + j] = z;
            }
        }
        Self::new(dim, entries)
    }

    pub(crate) fn from_entries_unchecked(dim: usize, entries: Vec<C64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { dim, entries }
    }

    pub fn pauli_x() -> Self {
        Self::from_entries_unchecked(2, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn pauli_y() -> Self {
        let i = C64::new(0.0, 1.0);
        Self::from_entries_unchecked(2, vec![ZERO, -i, i, ZERO])
    }

    pub fn pauli_z() -> Self {
        Self::from_entries_unchecked(2, vec![ONE, ZERO, ZERO, -ONE])
    }

    pub fn hadamard() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_entries_unchecked(2, vec![h, h, h, -h])
    }

    /// `exp(−iθY/2)`, a rotation by `theta` about the Pauli-Y axis.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::from_entries_unchecked(
            2,
            vec![C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)],
        )
    }

    /// `diag(e^{iφ_0}, e^{iφ_1}, …)`
    pub fn diagonal_phases(phases: &[f64]) -> Self {
        let dim = phases.len();
        let mut entries = vec![ZERO; dim * dim];
        for (i, &phi) in phases.iter().enumerate() {
            entries[i * dim + i] = C64::from_polar(1.0, phi);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_entries_unchecked(self.dim, adjoint_entries(self.dim, &self.entries))
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!(
                "cannot compose {0}x{0} with {1}x{1}",
                self.dim, rhs.dim
            )));
        }
        Ok(Self::from_entries_unchecked(
            self.dim,
            matmul(self.dim, &self.entries, &rhs.entries),
        ))
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result.entries = matmul(self.dim, &result.entries, &base.entries);
            }
            n >>= 1;
            if n > 0 {
                base.entries = matmul(self.dim, &base.entries, &base.entries);
            }
        }
        result
    }

    /// Largest entrywise deviation of `U†U` or `UU†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let adj = adjoint_entries(self.dim, &self.entries);
        let left = identity_deviation(self.dim, &matmul(self.dim, &adj, &self.entries));
        let right = identity_deviation(self.dim, &matmul(self.dim, &self.entries, &adj));
        left.max(right)
    }

    /// Smallest entrywise deviation of `self` from `e^{iφ} I` over global phases `φ`.
    ///
    /// The phase is fixed from the trace, which is the least-squares choice.
    pub fn deviation_from_scalar_identity(&self) -> f64 {
        let trace: C64 = (0..self.dim).map(|i| self.get(i, i)).sum();
        let phase = if trace.norm() > 0.0 {
            trace / trace.norm()
        } else {
            ONE
        };
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j { phase } else { ZERO };
                worst = worst.max((self.get(i, j) - target).norm());
            }
        }
        worst
    }

    pub fn apply_raw(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.entries[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `U|ψ⟩`
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.check_dim(psi)?;
        StateVector::normalized(self.apply_raw(psi.amplitudes()))
    }

    /// `⟨a|U|b⟩`
    pub fn matrix_element(&self, a: &StateVector, b: &StateVector) -> Result<C64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(vecops::vdot(a.amplitudes(), &self.apply_raw(b.amplitudes())))
    }

    /// `⟨ψ|U|ψ⟩`
    pub fn expectation(&self, psi: &StateVector) -> Result<C64> {
        self.matrix_element(psi, psi)
    }

    fn check_dim(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "operator of dimension {} applied to state of dimension {}",
                self.dim,
                psi.dim()
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<C64>>> for UnitaryMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("rows must form a square matrix".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }
}

impl From<UnitaryMatrix> for Vec<Vec<C64>> {
    fn from(u: UnitaryMatrix) -> Self {
        u.entries.chunks(u.dim).map(<[C64]>::to_vec).collect()
    }
}
