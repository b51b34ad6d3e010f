use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rows are linearly dependent")]
    Singular,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// Enumeration would exceed the configured cap.
    #[error("enumeration of {count} sublattices exceeds cap {cap}; request a count instead of a census")]
    CapExceeded { count: String, cap: u64 },

    /// An internal consistency check failed. Never reachable on valid input
    /// unless there is a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
