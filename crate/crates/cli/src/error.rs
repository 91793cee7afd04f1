use fracbound_core::Error as CoreError;

use crate::report::Report;

/// Failures surfaced by the command layer, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(CoreError),
    #[error("resource guard: {0}")]
    Guard(CoreError),
    #[error("inequality violated")]
    Violation(Box<Report>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Guard(_) => 4,
            CliError::Violation(_) => 5,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::GuardExceeded { .. } => CliError::Guard(e),
            other => CliError::Precondition(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
