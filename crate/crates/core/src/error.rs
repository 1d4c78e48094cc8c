use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A nonzero algebra element whose reduced norm vanished.
    #[error("nonzero element has zero reduced norm; the algebra is not a division algebra")]
    DivisionFailure,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported algebra: {0}")]
    UnsupportedSpec(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("element {index} is not unitary: {reason}")]
    NotUnitary { index: usize, reason: String },

    #[error("zero difference at pair ({0},{1})")]
    ZeroDifference(usize, usize),

    #[error("need at least 2 codebook elements, got {0}")]
    TooFewElements(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
