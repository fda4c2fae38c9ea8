use thiserror::Error;

/// Errors raised by the decision procedures and the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("box has 2^{support} vertices, more than the cap {cap}")]
    SupportTooLarge { support: usize, cap: usize },
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("eventually periodic sequence needs a nonempty period")]
    EmptyPeriod,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad indices: need 1 <= i <= j, got i={i}, j={j}")]
    BadIndices { i: usize, j: usize },
    #[error("operation needs a matrix map")]
    NotMatrixKind,
    #[error("square does not commute: {0}")]
    SquareNotCommuting(String),
    #[error("elements belong to different direct systems")]
    DifferentSystems,
    #[error("indices {0} and {1} have no common upper bound")]
    NoCommonIndex(usize, usize),
    #[error("connecting map {from} -> {to} is not contractive")]
    NotContractive { from: usize, to: usize },
    #[error("cone is incompatible with the system: {0}")]
    ConeIncompatible(String),
    #[error("connecting map {from} -> {to} is not zero")]
    EdgesNotZero { from: usize, to: usize },
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("exact norms are only available for p in {{1, 2, inf}}, got p={0}")]
    UnsupportedNorm(u32),
    #[error("index {index} is outside the system")]
    UnknownIndex { index: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
