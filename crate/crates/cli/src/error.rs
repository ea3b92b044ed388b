use std::path::PathBuf;

use thiserror::Error;

/// Everything a subcommand can fail with, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {message}", path.display())]
    Malformed { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] peterweyl_core::Error),
    #[error("failing property: {0}")]
    Verification(String),
}

impl CliError {
    pub fn malformed(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Malformed { path: path.into(), message: message.to_string() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 0 ok, 1 verification failure, 2 usage or parameter, 3 insufficient
    /// data, 4 conditioning.
    pub fn exit_code(&self) -> u8 {
        use peterweyl_core::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(E::InsufficientData(_) | E::Estimation(_) | E::SearchFailure { .. }) => 3,
            CliError::Core(E::Conditioning { .. }) => 4,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
