use thiserror::Error;

use crate::scenario::Diagnostic;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input")]
    Validation(Vec<Diagnostic>),
    #[error(transparent)]
    Model(#[from] taskgrowth::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(path: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation(vec![Diagnostic {
            path: path.into(),
            reason: reason.into(),
        }])
    }

    /// 2 for bad input, 1 for failures while solving or writing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Model(_) | CliError::Io(_) => 1,
        }
    }

    /// Lines for the error stream.
    pub fn lines(&self) -> Vec<String> {
        match self {
            CliError::Validation(diags) => diags.iter().map(|d| format!("error: {d}")).collect(),
            other => vec![format!("error: {other}")],
        }
    }
}
