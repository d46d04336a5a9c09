use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("incompatible field contexts: radicand {0} vs {1}")]
    IncompatibleRadicands(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is a perfect square; the two-coordinate representation is degenerate")]
    SquareRadicand(String),
    #[error("mismatched quaternion algebra context")]
    AlgebraMismatch,
    #[error("series truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term of the denominator is not invertible")]
    NonInvertibleConstant,
    #[error("unsupported convention: {0}")]
    UnsupportedConvention(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("order verification needs integer structure constants, got {0}")]
    NonIntegralGamma(String),
    #[error("codec configuration invalid: {0}")]
    Codec(String),
    #[error("malformed frame at byte {offset}: {msg}")]
    Frame { offset: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
