use alloc::string::String;

/// Every failure the core can report.
///
/// Variants split into two families: input validation (the request was
/// malformed or outside an operation's domain) and computational outcomes
/// (the input was well-formed but the mathematics rejects it, e.g. a
/// polynomial that is not a Hilbert polynomial). [`Error::is_validation`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An operation was called outside its stated preconditions.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A value could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The polynomial has no binomial-sum (Gotzmann) expansion.
    #[error("not a Gotzmann polynomial: {0}")]
    NotGotzmann(String),

    /// A quantity required to be an integer is not.
    #[error("non-integral value: {0}")]
    NonIntegral(String),

    /// A quantity required to be positive is not.
    #[error("non-positive value: {0}")]
    NonPositive(String),

    /// An exponent in the constant `d` would be negative (h(m0) < n + 2).
    #[error("negative exponent: {0}")]
    ExponentNegative(String),

    /// Matrix input does not satisfy the shape/size hypotheses of the minor bound.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// A self-check failed; this indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// m0 could not be decided even after precision escalation.
    #[error("precision ambiguity: {0}")]
    PrecisionAmbiguity(String),

    /// Argument outside the mathematical domain (e.g. pow with base < 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A value exceeded what the three-level magnitude scheme can hold.
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// True for errors caused by malformed or out-of-domain input.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::PreconditionViolated(_) | Error::Parse(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
