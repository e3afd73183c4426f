use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series is not invertible: constant term {0} is not a unit")]
    NotInvertible(String),

    #[error("k must be at least 2 (got {0})")]
    InvalidK(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("class has {count} paths, above the enumeration limit of {limit}")]
    ResourceLimit { count: String, limit: u64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid OEIS identifier {0:?}")]
    InvalidId(String),

    #[error("failed to fetch {id}: {message}")]
    Fetch { id: String, message: String },

    #[error("sequence {0} is not available offline")]
    Unavailable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
