use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Numerical tolerances used for validation and classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// `| ‖ψ‖ − 1 |` accepted for a [`StateVector`](super::StateVector).
    pub norm: f64,
    /// Entrywise deviation of `U†U` and `UU†` from the identity.
    pub unitary: f64,
    /// Hermiticity and unit trace of density matrices.
    pub density: f64,
    /// Smallest eigenvalue tolerated in a density matrix (applied as `−eigen_floor`).
    pub eigen_floor: f64,
    /// Smallest eigenvalue tolerated in a Gram-type PSD test (applied as `−psd_floor`).
    pub psd_floor: f64,
    /// Gram-matrix agreement needed to call a state family transformation feasible.
    pub gram: f64,
    /// Overlaps at or below this magnitude count as orthogonal.
    pub overlap_floor: f64,
    /// Deviation of `U^T` from a global phase times the identity.
    pub periodicity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: 1e-10,
            unitary: 1e-10,
            density: 1e-10,
            eigen_floor: 1e-9,
            psd_floor: 1e-10,
            gram: 1e-9,
            overlap_floor: 1e-9,
            periodicity: 1e-8,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 8] = [
        "norm",
        "unitary",
        "density",
        "eigen_floor",
        "psd_floor",
        "gram",
        "overlap_floor",
        "periodicity",
    ];

    /// Overrides a single tolerance by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Argument(format!(
                "tolerance {name} must be a non-negative finite number, got {value}"
            )));
        }
        let slot = match name {
            "norm" => &mut self.norm,
            "unitary" => &mut self.unitary,
            "density" => &mut self.density,
            "eigen_floor" => &mut self.eigen_floor,
            "psd_floor" => &mut self.psd_floor,
            "gram" => &mut self.gram,
            "overlap_floor" => &mut self.overlap_floor,
            "periodicity" => &mut self.periodicity,
            _ => {
                return Err(Error::Argument(format!(
                    "unknown tolerance {name:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}
