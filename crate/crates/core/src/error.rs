use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("unknown variable {0:?} (expected one of l, x, y, t)")]
    UnknownVar(String),
    #[error("malformed binding {0:?} (expected NAME=RATIONAL)")]
    ParseBinding(String),
    #[error("series has no reciprocal: constant term {0} is not a nonzero rational")]
    NonUnitSeries(String),
    #[error("series constant term must vanish, found {0}")]
    NonzeroConstantTerm(String),
    #[error("coefficient index {index} is beyond truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },
    #[error("{kind} tables cannot be built by the {method} method")]
    UnsupportedMethod {
        kind: &'static str,
        method: &'static str,
    },
    #[error("{0} has no classical counterpart at l = 0")]
    NoClassicalLimit(&'static str),
    #[error("malformed polynomial JSON: {0}")]
    PolyJson(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
