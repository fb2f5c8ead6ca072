use thiserror::Error;

/// Errors raised by the enumeration and algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pooling spec: {0}")]
    InvalidSpec(String),
    #[error("invalid face selection: {0}")]
    InvalidSelection(String),
    #[error("selection is not a face (its graph has a directed cycle)")]
    NotAFace,
    #[error("enumeration budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("tie detected: window {window} has a non-unique maximum")]
    TieDetected { window: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("letter {letter} at position {position} lies outside its window")]
    OutOfWindow { position: usize, letter: usize },
    #[error("no closed form covers (k, s) = ({k}, {s})")]
    RegimeNotCovered { k: usize, s: usize },
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("method {method} is not available for n = {n}")]
    MethodRange { method: &'static str, n: usize },
    #[error("series expansion leaves the integers at coefficient {index}")]
    NonIntegerCoefficient { index: usize },
    #[error("no positive root found below the root bound")]
    NoPositiveRoot,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
