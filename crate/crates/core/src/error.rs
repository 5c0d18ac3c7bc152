use thiserror::Error;

/// Errors produced by the generation and analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Well-formed input that violates a mathematical precondition.
    #[error("{0}")]
    Domain(String),

    /// Text format error, `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The partition is not equitable: `first` and `second` share a cluster
    /// but have different neighbor counts toward `cluster` (all 0-based).
    #[error(
        "partition is not equitable: vertices {first} and {second} disagree on their degree toward cluster {cluster}"
    )]
    NotEquitable {
        first: usize,
        second: usize,
        cluster: usize,
    },

    /// The quotient graph admits no realization.
    #[error("quotient graph is infeasible")]
    Infeasible,

    /// An exact quantity does not fit the integer type used for cluster sizes.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// Brute-force enumeration refused because of its cost.
    #[error("graph has {n} vertices, brute force is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    /// The automorphism search exhausted its node budget.
    #[error("automorphism search exceeded its budget of {0} search nodes")]
    BudgetExceeded(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
