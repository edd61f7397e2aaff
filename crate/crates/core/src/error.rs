use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation at zero")]
    EvaluationAtZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("signature mismatch: expected {expected}, got {got}")]
    SignatureMismatch { expected: String, got: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("index {index} out of range {range}")]
    InvalidIndex { index: usize, range: String },
    #[error("inadmissible triple ({0}, {1}, {2})")]
    Inadmissible(usize, usize, usize),
    #[error("invalid color sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("n = {n} exceeds the limit {limit} for {what}")]
    ResourceLimit { what: String, n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, TlError>;
