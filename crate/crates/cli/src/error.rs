use hodge_core::formulas::FormulaError;
use hodge_core::hn::HnError;
use hodge_core::vhs::VhsError;
use hodge_core::{RatFunError, RootDataError};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String),
    /// Report to print before exiting with status 1.
    VerifyFailed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) => f.write_str(m),
            CliError::VerifyFailed(_) => f.write_str("verification failed"),
        }
    }
}

impl From<RootDataError> for CliError {
    fn from(e: RootDataError) -> Self {
        match e {
            RootDataError::DefinitionMismatch { .. } => CliError::Precondition(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::RootData(r) => r.into(),
            FormulaError::Unsupported(m) => CliError::Usage(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<HnError> for CliError {
    fn from(e: HnError) -> Self {
        match e {
            HnError::Formula(f) => f.into(),
            HnError::RootData(r) => r.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<RatFunError> for CliError {
    fn from(e: RatFunError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<VhsError> for CliError {
    fn from(e: VhsError) -> Self {
        match e {
            VhsError::SingularImaginaryPart => CliError::Precondition(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
