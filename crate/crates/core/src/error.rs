use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("decay rate {index} is {value}; rates must be finite and nonnegative")]
    InvalidRate { index: usize, value: f64 },

    #[error("time must be finite and nonnegative, got {0}")]
    InvalidTime(f64),

    #[error("prior probability must lie in [0, 1], got {0}")]
    InvalidPrior(f64),

    #[error("expected a {expected}x{expected} matrix, got dimension {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unsupported matrix dimension {0}; only 2 and 4 are handled")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("not a density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("time grid must be strictly increasing and nonnegative")]
    InvalidGrid,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
