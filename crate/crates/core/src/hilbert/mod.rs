//! Finite-dimensional Hilbert-space machinery shared by every other module.

mod density;
mod linext;
mod random;
mod space;
mod state;
mod tolerances;
mod unitary;
pub mod vecops;

pub use density::{purity, DensityMatrix};
pub use linext::LinearExtensionMap;
pub use random::{random_state, random_state_from, random_unitary, random_unitary_from, seeded_rng};
pub use space::{
    apply_on_factor, apply_on_factor_raw, entanglement_entropy, entanglement_entropy_raw,
    partial_trace, partial_trace_raw, CompositeSpace,
};
pub use state::{inner_product, tensor, tensor_power, StateVector};
pub use tolerances::Tolerances;
pub use unitary::UnitaryMatrix;

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Largest number of complex amplitudes any single vector may hold.
pub const MAX_TOTAL_DIM: usize = 1 << 20;

pub(crate) fn check_capacity(required: u128) -> crate::Result<()> {
    if required > MAX_TOTAL_DIM as u128 {
        Err(crate::Error::Capacity {
            required,
            limit: MAX_TOTAL_DIM,
        })
    } else {
        Ok(())
    }
}
