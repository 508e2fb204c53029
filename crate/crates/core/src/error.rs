use thiserror::Error;

/// Errors raised by carrier arithmetic and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("invalid carrier: {0}")]
    InvalidDescriptor(String),

    #[error("carrier {0} is not dense")]
    NotDense(String),

    #[error("carrier {0} is not a field")]
    NotAField(String),

    #[error("division by zero element")]
    DivisionByZero,

    #[error("empty interval: {0}")]
    EmptyInterval(String),

    #[error("{value} is not in {interval}")]
    NotInInterval { value: String, interval: String },

    #[error("expected a positive element, got {0}")]
    NotPositive(String),

    #[error("base must differ from one")]
    UnitBase,

    #[error("argument {value} outside the domain {domain}")]
    OutOfDomain { value: String, domain: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("empty domain")]
    EmptyDomain,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
