//! Finite-dimensional simulation of replication, culling and mutation of
//! "quantum species" states.
//!
//! The crate is organised bottom-up:
//!
//! - [`hilbert`]: state vectors, unitaries, density matrices, tensor
//!   products, partial traces and entanglement entropy.
//! - [`replication`]: Wigner's equation count, the linear-extension basis
//!   cloner and its gap to ideal cloning, the inner-product obstruction for
//!   non-orthogonal pairs, the probabilistic cloning machine and periodic
//!   copyability under cyclic evolution.
//! - [`culling`]: the linear-extension basis culler and the unitary
//!   ancilla-assisted clonability test.
//! - [`mutation`]: the symmetric mutation-entanglement state over `M`
//!   copies, its overlap with the unevolved state, and the unitarity
//!   residual that rules the entangling map out.
//!
//! Amplitudes of composite systems use row-major order with the leftmost
//! tensor factor most significant.

#![forbid(unsafe_code)]

pub mod culling;
pub mod error;
pub mod hilbert;
pub mod mutation;
pub mod replication;

pub use error::{Error, Result};
pub use hilbert::{
    CompositeSpace, DensityMatrix, LinearExtensionMap, StateVector, Tolerances, UnitaryMatrix,
    C64, MAX_TOTAL_DIM,
};

/// Library version recorded in experiment outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
