use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus is reducible over F_2")]
    ReducibleModulus,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),
    #[error("equal-degree splitting failed after {0} attempts")]
    TraceSplitFailed(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Q = {0} is not of the form 2^(2l-1)")]
    BadQ(u64),
    #[error("bad index {index} for Q = {q}")]
    BadIndex { q: u64, index: u64 },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("evaluation point has finite escape time {0}")]
    BadPoint(u64),
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("no evaluation achieved full rank: {0}")]
    NotCertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
