use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator counts differ: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("label {label} out of range 1..={m}")]
    LabelOutOfRange { label: usize, m: usize },
    #[error("word is not in F_{degree}: Magnus expansion has a nonzero term of degree {found}")]
    NotInLowerCentralTerm { degree: usize, found: usize },
    #[error("degree {0} component is not a Lie element")]
    NotPrimitive(usize),
    #[error("element is not killed by the bracket map")]
    NotInKernel,
    #[error("twisted tree {0} has a non-integral eta value")]
    NonIntegral(String),
    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("twisted trees carry no terms in odd order {0}")]
    TwistedInOddOrder(usize),
    #[error("{what} = {value} exceeds the configured maximum {max}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("boundary twist needs a twisted tree of order at least 1")]
    TwistOrderZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("quotient structure mismatch: {0}")]
    QuotientMismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
