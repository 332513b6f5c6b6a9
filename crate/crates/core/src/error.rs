use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid diagonal: {0}")]
    InvalidDiagonal(String),

    #[error("invalid flip: {0}")]
    InvalidFlip(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("pinching order violated: {0}")]
    PinchOrder(String),

    #[error("sample values must be nonzero: {0}")]
    ZeroSample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
