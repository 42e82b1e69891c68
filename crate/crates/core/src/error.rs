use crate::exactalg::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NonPrime(u64),
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("denominator is zero (or divisible by the characteristic)")]
    ZeroDenominator,
    #[error("expected {expected} coordinates, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("point {0} appears twice in the scheme")]
    DuplicatePoint(usize),
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("support has rank {rank}, needs {needed}: the points lie in a hyperplane")]
    RankDeficient { rank: usize, needed: usize },
    #[error("operation is not supported over {0}")]
    UnsupportedField(FieldSpec),
    #[error("enumeration of {size} messages exceeds the guard of {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("no valid configuration after {0} attempts")]
    DegenerateAfterRetries(usize),
    #[error("degree cap {0} exceeded")]
    CapExceeded(usize),
    #[error("linear form is not a non-zero divisor (degree {0} dimension check failed)")]
    NotNzd(usize),
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),
    #[error("scheme is not homogeneous")]
    NotHomogeneous,
    #[error("scheme is not reduced")]
    NotReduced,
    #[error("invalid complete intersection description: {0}")]
    InvalidCi(String),
    #[error("binomial coefficient overflow")]
    Overflow,
}
