use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flag combination or value; exit status 2.
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A pipeline stage failed; exit status 1.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: thorax_core::Error,
    },

    #[error("{0}")]
    Manifest(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn stage(stage: &'static str) -> impl FnOnce(thorax_core::Error) -> CliError {
        move |source| CliError::Stage { stage, source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
