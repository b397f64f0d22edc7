use thiserror::Error;

/// Errors surfaced by the ring, lattice and decision layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("odd coefficient, class is not divisible by 2: {0}")]
    OddCoefficient(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("model validation failed: {0}")]
    Validation(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("integer overflow in exact arithmetic: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
