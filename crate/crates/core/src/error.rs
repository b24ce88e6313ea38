use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse half-integer from {0:?}")]
    ParseHalfInt(String),

    #[error("angular momentum must be non-negative, got {0}")]
    NegativeSpin(String),

    #[error("projection {m} is not a valid label for j = {j}")]
    BadProjection { j: String, m: String },

    #[error("quon order k must be at least 2, got {0}")]
    OrderTooSmall(i64),

    #[error("quon order k = {0} exceeds the dimension guard ({1})")]
    OrderTooLarge(usize, usize),

    #[error("q-factorial index {n} outside [0, {max}]")]
    QFactorialRange { n: i64, max: i64 },

    #[error("step index {s} outside [0, {max}] for j = {j}")]
    AlphaStep { j: String, s: i64, max: i64 },

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("mixed r values in one coupling: {0} vs {1}")]
    MixedR(f64, f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("tensor operator is malformed: {0}")]
    Tensor(String),

    #[error("cannot parse r from {0:?}")]
    ParseR(String),
}

pub type Result<T> = std::result::Result<T, Error>;
