use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("series has no multiplicative logarithm: constant term is {0}, expected 1")]
    NotUnit(String),

    #[error("automorphism is not a Hamiltonian flow: {0}")]
    NotInGroup(String),

    #[error("path is not generic: {0}")]
    NonGeneric(String),

    #[error("diagram is inconsistent: {0}")]
    Inconsistent(String),

    #[error("incoming/outgoing classification undefined: normal {0} is central for the skew form")]
    CentralNormal(String),

    #[error("finite set of directions too small: {0}")]
    DirectionsTooSmall(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}
