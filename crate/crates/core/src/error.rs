use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("cyclotomic order must be at least 3, got {0}")]
    InvalidOrder(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("xi -> xi^{k} is not an automorphism of Q(xi_{n}): gcd({k}, {n}) != 1")]
    InvalidAutomorphism { k: i64, n: u32 },

    #[error("invalid star map choice k = {k} for order {n}: {reason}")]
    InvalidStarChoice { k: i64, n: u32, reason: String },

    #[error("invalid substitution system: {0}")]
    InvalidSystem(String),

    #[error("system is not in pure-translation (digit matrix) form")]
    NotPureTranslation,

    #[error("matrix is not primitive")]
    NotPrimitive,

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0}")]
    Format(String),
}

impl Error {
    pub(crate) fn system(msg: impl Into<String>) -> Self {
        Error::InvalidSystem(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
