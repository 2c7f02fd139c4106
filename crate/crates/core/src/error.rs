use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed interval [{lo}, {hi}): lower endpoint must be below upper endpoint")]
    MalformedInterval { lo: Box<Rational>, hi: Box<Rational> },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("dyadic exponent {0} exceeds the supported range |e| <= 64")]
    ExponentOverflow(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point {0} is not covered by any piece of the map")]
    UndefinedPoint(Box<Rational>),

    #[error("map is not injective")]
    NotInjective,

    #[error("map fails classification: {0}")]
    Classification(String),

    #[error("set is not a wavelet set")]
    NotWaveletSet,

    #[error("stage budget of {budget} exhausted with unextended measure {residual}")]
    BudgetExhausted { budget: usize, residual: Box<Rational> },

    #[error("operation cancelled after {0} stages")]
    Cancelled(usize),

    #[error("unknown gallery entry {name:?}; available: {}", available.join(", "))]
    UnknownName { name: String, available: Vec<String> },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
