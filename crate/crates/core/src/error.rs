use thiserror::Error;

use crate::format::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and no reciprocal")]
    ZeroConstantTerm,

    #[error("coefficient index {index} beyond truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },

    /// A division that must be exact left a remainder. Always an implementation bug.
    #[error("non-exact division in {context}")]
    NonExactDivision { context: &'static str },

    #[error("negative value {value} where a count was expected ({context})")]
    NegativeCount {
        value: String,
        context: &'static str,
    },

    #[error("enumeration of {predicted} structures exceeds budget {max_count}")]
    BudgetExceeded { predicted: String, max_count: u64 },

    #[error("n = {n} exceeds the brute-force cap {cap}")]
    CapExceeded { n: u32, cap: u32 },

    #[error("method {method} not applicable: {reason}")]
    MethodNotApplicable {
        method: &'static str,
        reason: String,
    },

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("b-file: {0}")]
    BFile(String),
}
