use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid Frobenius exponent {q}: not a power of the characteristic {p}")]
    InvalidFrobenius { q: u64, p: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("capacity exceeded: {what} needs {required}, budget is {budget}")]
    Capacity {
        what: String,
        required: u128,
        budget: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("degenerate Gram matrix: kernel of dimension {kernel_dim}")]
    RankDeficient { kernel_dim: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate failure: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
