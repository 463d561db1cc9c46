use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("continued fraction divides by zero at term {position}")]
    DivisionByZero { position: usize },

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("partial quotient does not fit in 64 bits")]
    Overflow,

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("the empty vector represents the unknot")]
    Unknot,

    #[error("no common two-connector family: {0}")]
    NoCommonFamily(String),

    #[error("n = {n} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { n: u64, budget: u64 },

    #[error("EK({n}) not computed at this scale: certified bounds {lower} <= EK <= {upper}")]
    NotCertified { n: u64, lower: usize, upper: usize },

    #[error("invalid parsing: {0}")]
    InvalidParsing(String),

    #[error("negation rejected: {0}")]
    NegationRejected(String),

    #[error("lift target {target} is below 3 * {crossings}")]
    LiftTarget { target: u64, crossings: u64 },

    #[error("crossing number must be at least 3, got {0}")]
    CrossingNumber(u64),
}
