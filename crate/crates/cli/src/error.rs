use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Numeric(#[from] hardy_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} of {total} criteria failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Parse(_) => 2,
            Self::Numeric(hardy_core::Error::Divergent { .. }) => 4,
            Self::Numeric(_) => 3,
            Self::Io(_) | Self::VerifyFailed { .. } => 1,
        })
    }
}
