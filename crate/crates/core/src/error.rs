use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; none indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field {p}^{n} exceeds the supported bound of {bound} elements")]
    FieldTooLarge { p: u64, n: u32, bound: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("degree {from} does not divide {to}")]
    NotSubfield { from: u32, to: u32 },
    #[error("characteristic mismatch: expected {expected}, found {found}")]
    CharacteristicMismatch { expected: u64, found: u64 },
    #[error("incomparable unit kinds: {0} and {1}")]
    IncomparableUnits(String, String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unresolved component: {0}")]
    Unresolved(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(String, String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
