use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least two symbols, got {0}")]
    EmptyOrSingleton(usize),
    #[error("weight #{index} is not a positive finite number ({value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, not 1 (pass normalize to rescale)")]
    NotNormalized { sum: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("size mismatch: {expected} probabilities vs {actual} lengths")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid length set: {0}")]
    InvalidLengthSet(String),
    #[error("lengths must be positive and nondecreasing")]
    NotMonotone,
    #[error("no prefix code of {n} symbols fits lengths up to {max_length}")]
    Infeasible { n: usize, max_length: u32 },
    #[error("Kraft sum {0} exceeds 1")]
    KraftViolation(String),
    #[error("codeword length {0} exceeds the 64-bit codeword limit")]
    CodewordTooLong(u32),
    #[error("corrupt grid: {0}")]
    CorruptGrid(String),
    #[error("cost table is not strictly increasing at length {0}")]
    NotIncreasing(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("bit stream ends inside a codeword (symbol #{0})")]
    Truncated(usize),
    #[error("no codeword matches the input at symbol #{0}")]
    InvalidCode(usize),
}
