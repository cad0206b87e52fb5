use census_core::CensusError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("golden data: {0}")]
    Golden(String),

    #[error("verification failed: {0} mismatching cells")]
    Mismatch(usize),

    #[error(transparent)]
    Census(#[from] CensusError),
}

impl CliError {
    /// 0 success, 1 mismatch or integrality violation, 2 usage, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Census(CensusError::IntegralityViolation { .. }) => 1,
            CliError::Census(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Golden(_) => 3,
        }
    }
}
