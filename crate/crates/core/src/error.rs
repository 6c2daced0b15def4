use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero polynomial has no normal form or gcd")]
    ZeroPolynomial,
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("invalid Alexander polynomial: {0}")]
    InvalidAlexander(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degenerate cover: det(L_q) = 0 for q = {0}")]
    DegenerateCover(u64),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: String, cap: u64 },
    #[error("invalid lens space fraction {p}/{q}")]
    BadFraction { p: i64, q: i64 },
    #[error("element {0} is outside the host group")]
    ElementOutOfRange(String),
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error("mismatched cover degrees {0} and {1}")]
    MismatchedQ(u64, u64),
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
