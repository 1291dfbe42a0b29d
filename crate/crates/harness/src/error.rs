use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Numeric {
        context: String,
        #[source]
        source: fracsinc_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub(crate) fn numeric(context: impl Into<String>, source: fracsinc_core::Error) -> Self {
        HarnessError::Numeric {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 config, 2 numeric, 3 IO.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Config(_) => 1,
            HarnessError::Numeric { .. } => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
