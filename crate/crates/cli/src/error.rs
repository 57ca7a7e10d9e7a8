use std::path::PathBuf;

use thiserror::Error;

use crate::alist::AlistError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Alist {
        path: PathBuf,
        #[source]
        source: AlistError,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("invalid code: {0}")]
    Code(#[from] qhgp_core::Error),
    #[error("{failed} verification check(s) failed")]
    Verification { failed: usize },
    #[error("distance search budget exhausted: {0}")]
    BudgetExhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. }
            | CliError::Alist { .. }
            | CliError::Json { .. }
            | CliError::Parse(_)
            | CliError::Code(_) => 2,
            CliError::Verification { .. } => 3,
            CliError::BudgetExhausted(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
