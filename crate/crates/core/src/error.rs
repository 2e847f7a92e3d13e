use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(usize),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("element is not in Z[1/p]·GL2(Zp)-form required here: {0}")]
    NotInZK(String),
    #[error("non-positive torus element: {0}")]
    NotPositive(String),
    #[error("module is not smooth: {0}")]
    NotSmooth(String),
    #[error("no admissible finite quotient within desk-scale bound: {0}")]
    NoAdmissibleQuotient(String),
    #[error("truncation unsound: {0}")]
    TruncationUnsound(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
