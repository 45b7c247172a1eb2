use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family `{family}` is invalid at n = {n}: {reason}")]
    FamilyInvalid {
        family: String,
        n: usize,
        reason: String,
    },
    #[error("birth-death rates invalid: {0}")]
    InvalidRates(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{param}` for family `{family}`")]
    MissingParam { family: String, param: String },
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("{what} of size {size} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("not available: {0}")]
    NotAvailable(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("incompatible families: {0}")]
    IncompatibleFamilies(String),
    /// Element labels are 1-based.
    #[error("element {0} is a singleton")]
    SingletonFound(usize),
    /// Element labels are 1-based.
    #[error("arc ({0}, {1}) joins two elements of the same box")]
    HomogeneousArc(usize, usize),
    #[error("domain violation: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
