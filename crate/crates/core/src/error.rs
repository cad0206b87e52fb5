use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CensusError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A quantity the theory guarantees to be a positive integer was not.
    #[error("integrality violation at p = {p}: {quantity} = {value}")]
    IntegralityViolation {
        p: u64,
        quantity: String,
        value: BigRational,
    },
}

impl CensusError {
    pub(crate) fn integrality(p: u64, quantity: impl Into<String>, value: BigRational) -> Self {
        CensusError::IntegralityViolation {
            p,
            quantity: quantity.into(),
            value,
        }
    }
}
