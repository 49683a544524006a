use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("empty set where a nonempty set is required")]
    EmptySet,

    #[error("{divisor} does not divide {modulus}")]
    NotDivisor { divisor: u64, modulus: u64 },

    #[error("residue {value} outside [0, {modulus})")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("|S+S| = {sumset_size} but the critical-pair hypothesis needs 2|S|-1 = {expected}")]
    NotCriticalPair { sumset_size: u64, expected: u64 },

    #[error("{what} = {value} exceeds the limit {limit}")]
    LimitExceeded { what: &'static str, value: u128, limit: u128 },

    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: String, reason: String },

    #[error("{element} is a member of X but not of the enclosing periodic set")]
    NotContained { element: u64 },
}

impl Error {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { field: field.into(), reason: reason.into() }
    }

    /// True for errors raised by a size cap rather than by bad input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
