use std::path::PathBuf;

use hybridlattice::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Validation(_) => 5,
            CliError::Core(e) => match e {
                CoreError::Resonance { .. } => 3,
                CoreError::UnstableMode { .. } | CoreError::UnstableBand { .. } | CoreError::UnstableSpectrum { .. } => 4,
                CoreError::Hermiticity { .. } | CoreError::DivergentCoefficients { .. } => 5,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
