use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter tuple violates one of the admissible ranges. The
    /// message names the violated constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("weight mismatch: declared {declared}, found {found}")]
    WeightMismatch { declared: usize, found: usize },

    #[error("DoPR elements sum to {sum}, expected code length {n}")]
    SumMismatch { sum: usize, n: usize },

    #[error("value {value} out of range [{min}, {max}]")]
    OutOfRange {
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("positions must be strictly increasing")]
    UnsortedPositions,

    #[error("code lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("correlation needs weight >= 2, got {0}")]
    WeightTooSmall(usize),

    #[error("operation needs at least {needed} codes, got {got}")]
    TooFewCodes { needed: usize, got: usize },

    #[error("partial code leaves no room: prefix sum {sum} > {limit}")]
    PartialOverflow { sum: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("document error: {0}")]
    Document(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
