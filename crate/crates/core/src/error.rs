use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is at or above the 2^62 cap")]
    ModulusTooLarge(u64),
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("excluded prime: {0}")]
    ExcludedPrime(String),
    #[error("consistency violation: {0}")]
    Consistency(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
