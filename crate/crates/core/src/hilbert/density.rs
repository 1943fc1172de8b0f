use nalgebra::DMatrix;
use serde::Serialize;

use super::{StateVector, Tolerances, C64};
use crate::{Error, Result};

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::new_with(dim, entries, &Tolerances::default())
    }

    pub fn new_with(dim: usize, entries: Vec<C64>, tol: &Tolerances) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} density matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let rho = Self { dim, entries };
        for i in 0..dim {
            for j in i..dim {
                let dev = (rho.get(i, j) - rho.get(j, i).conj()).norm();
                if dev > tol.density {
                    return Err(Error::InvalidDensity(format!(
                        "not Hermitian at ({i},{j}), deviation {dev:e}"
                    )));
                }
            }
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > tol.density {
            return Err(Error::InvalidDensity(format!("trace is {tr}")));
        }
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -tol.eigen_floor {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn from_pure(psi: &StateVector) -> Self {
        let a = psi.amplitudes();
        let dim = a.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for x in a {
            entries.extend(a.iter().map(|y| x * y.conj()));
        }
        Self { dim, entries }
    }

    /// `I/dim`
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0 / dim as f64, 0.0);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.dim, &self.entries)
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ.
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        entropy_from_spectrum(&self.eigenvalues())
    }
}

/// `tr(ρ²)`
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

pub(crate) fn hermitian_eigenvalues(dim: usize, entries: &[C64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(dim, dim, entries);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub(crate) fn entropy_from_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l > 1e-300)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}
