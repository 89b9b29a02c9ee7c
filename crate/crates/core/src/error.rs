use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("tower modulus mismatch")]
    ModulusMismatch,

    #[error("{0} is not a valid prime for this library (need a prime >= 5)")]
    InvalidPrime(u64),

    #[error("{q} is not a positive power of the characteristic {p}")]
    NotPrimePower { q: u64, p: u64 },

    #[error("points lie on different curves")]
    MixedCurve,

    #[error("points belong to different ambient groups")]
    GroupMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Frobenius relation does not hold: {0}")]
    InvalidRelation(String),

    #[error("enumeration budget exceeded: {required} entries requested, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("unsupported coordinate: {0}")]
    UnsupportedCoordinate(String),

    #[error("unsupported variety shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
