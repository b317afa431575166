use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid scenario {path}: {message}")]
    InvalidScenario { path: String, message: String },
    #[error("{0}")]
    Compute(#[from] sasaki_core::Error),
    #[error("cannot {action} {}: {source}", path.display())]
    Io {
        action: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0} difference(s) from the reference")]
    Mismatch(usize),
    #[error("reports are not comparable: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::InvalidScenario { path: path.into(), message: message.into() }
    }

    pub fn io(action: &'static str, path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { action, path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidScenario { .. } | CliError::Usage(_) => 2,
            CliError::Compute(e) if e.is_ceiling() => 3,
            CliError::Compute(sasaki_core::Error::Model(_)) => 2,
            CliError::Compute(_) => 1,
            CliError::Io { .. } => 4,
            CliError::Mismatch(_) | CliError::Schema(_) => 5,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
