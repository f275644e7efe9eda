use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator U{index} out of range for {n} strands")]
    IndexOutOfRange { index: u32, n: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("weight {m} is incompatible with {n} strands (need |m| <= n and m = n mod 2)")]
    Parity { n: usize, m: i64 },
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("q specializes to zero")]
    NonInvertibleQ,
    #[error("{0} is not a prime below 2^63")]
    NotPrime(u64),
    #[error("factorization of {word} through {tail} failed")]
    FactorizationFailed { word: String, tail: String },
    #[error("vector not in the span of the module basis")]
    NotInSpan,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
