use thiserror::Error;

/// Errors raised by the construction, validation and arithmetic layers.
///
/// Certificate verification never returns these for mathematically invalid
/// input; it reports failed checks instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("gcd(n, d) = {gcd} for n = {n}, d = {d}; n and d must be coprime")]
    Gcd { n: u64, d: u64, gcd: u64 },

    #[error("n = {n} must exceed d = {d} (and d >= 2)")]
    Order { n: u64, d: u64 },

    #[error("polynomial has degree {found}, expected {expected}")]
    Degree { expected: u64, found: String },

    #[error("polynomial has a repeated root")]
    RepeatedRoot,

    #[error("point ordinate vanishes: {0}")]
    ZeroOrdinate(String),

    #[error("division leaves a nonzero remainder: {0}")]
    Divisibility(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no square-free member found after {tried} candidates")]
    SearchExhausted { tried: usize },

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("divisor arithmetic needs d = 2, got d = {0}")]
    UnsupportedDegree(u64),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name, used in CLI error JSON and by the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Parse(_) => "parse",
            Error::Gcd { .. } => "gcd",
            Error::Order { .. } => "order",
            Error::Degree { .. } => "degree",
            Error::RepeatedRoot => "repeated-root",
            Error::ZeroOrdinate(_) => "zero-ordinate",
            Error::Divisibility(_) => "divisibility",
            Error::Hypothesis(_) => "hypothesis",
            Error::Precondition(_) => "precondition",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::UnsupportedField(_) => "unsupported-field",
            Error::UnsupportedDegree(_) => "unsupported-degree",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
