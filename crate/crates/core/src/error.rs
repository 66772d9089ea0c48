use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate simplex: edge vectors are linearly dependent")]
    DegenerateSimplex,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty input")]
    EmptyInput,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal witness failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
