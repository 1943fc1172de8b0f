use std::f64::consts::PI;

use serde::Serialize;

use super::cloner::{clone_gap_with, BasisCloner, RejectedReference};
use crate::hilbert::{StateVector, Tolerances, UnitaryMatrix};
use crate::{Error, Result};

/// Clone fidelity of the evolved state at step `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CyclePoint {
    pub t: u64,
    pub fidelity: f64,
}

/// `V · diag(e^{2πi·h_j/period}) · V†`, which satisfies `U^period = I` exactly.
pub fn periodic_unitary(eigenbasis: &UnitaryMatrix, period: u32, harmonics: &[u32]) -> Result<UnitaryMatrix> {
    if period == 0 {
        return Err(Error::Argument("period must be at least 1".into()));
    }
    if harmonics.len() != eigenbasis.dim() {
        return Err(Error::Dimension(format!(
            "{} harmonics for an eigenbasis of dimension {}",
            harmonics.len(),
            eigenbasis.dim()
        )));
    }
    let phases: Vec<f64> = harmonics
        .iter()
        .map(|&h| 2.0 * PI * f64::from(h % period) / f64::from(period))
        .collect();
    eigenbasis
        .compose(&UnitaryMatrix::diagonal_phases(&phases))?
        .compose(&eigenbasis.adjoint())
}

/// Qubit evolution of period 4 whose orbit from `|0⟩` is a proper
/// superposition at `t = 1, 2, 3`: eigenphases `(1, i)` in the basis rotated
/// by `Ry(π/4)`.
pub fn period_four_qubit_evolution() -> UnitaryMatrix {
    periodic_unitary(&UnitaryMatrix::ry(PI / 4.0), 4, &[0, 1]).expect("2x2 construction")
}

pub fn cyclic_replication_demo(
    u_step: &UnitaryMatrix,
    period: u32,
    psi0: &StateVector,
    cloner: &BasisCloner,
    steps: u64,
) -> Result<Vec<CyclePoint>> {
    cyclic_replication_demo_with(u_step, period, psi0, cloner, steps, &Tolerances::default())
}

/// Evolves the basis state `psi0` by `u_step` for `steps` steps and records
/// the clone fidelity at each `t = 0..=steps`.
///
/// `u_step^period` must equal the identity up to a global phase. The ideal
/// clone uses the rejected state paired with the basis index of `psi0`.
pub fn cyclic_replication_demo_with(
    u_step: &UnitaryMatrix,
    period: u32,
    psi0: &StateVector,
    cloner: &BasisCloner,
    steps: u64,
    tol: &Tolerances,
) -> Result<Vec<CyclePoint>> {
    if period == 0 {
        return Err(Error::Argument("period must be at least 1".into()));
    }
    if u_step.dim() != cloner.dim() || psi0.dim() != cloner.dim() {
        return Err(Error::Dimension(format!(
            "evolution of dimension {}, state of dimension {}, cloner of dimension {}",
            u_step.dim(),
            psi0.dim(),
            cloner.dim()
        )));
    }
    let k0 = psi0
        .basis_index(tol.norm)
        .ok_or_else(|| Error::Argument("initial state must be a computational basis state".into()))?;
    let dev = u_step.pow(u64::from(period)).deviation_from_scalar_identity();
    if dev > tol.periodicity {
        return Err(Error::Argument(format!(
            "evolution is not periodic with period {period} (deviation {dev:e})"
        )));
    }
    let reference = RejectedReference::Index(k0);
    let mut psi = psi0.clone();
    let mut out = Vec::with_capacity(steps as usize + 1);
    for t in 0..=steps {
        if t > 0 {
            psi = u_step.apply(&psi)?;
        }
        let fidelity = clone_gap_with(cloner, &psi, &reference)?.fidelity;
        out.push(CyclePoint { t, fidelity });
    }
    Ok(out)
}
