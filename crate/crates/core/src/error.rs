use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix `{found}` supplied where `{expected}` was expected")]
    RoleMismatch { expected: String, found: String },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("dimension n = {0} is not supported here (need n >= 2)")]
    UnsupportedDimension(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index ({row}, {col}) out of range for dimension {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
