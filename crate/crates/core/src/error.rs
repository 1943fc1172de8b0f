use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("capacity exceeded: {required} amplitudes requested, limit is {limit}")]
    Capacity { required: u128, limit: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("image set is not orthonormal (max Gram deviation {0:e})")]
    Isometry(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("outside the theorem's domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
