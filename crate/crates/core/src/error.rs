use thiserror::Error;

/// Errors produced by the polynomial, operator and decomposition routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("polynomial is not homogeneous in the vector variables")]
    NotHomogeneous,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource cap exceeded: dimension {dim} > cap {cap}")]
    ResourceCap { dim: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
