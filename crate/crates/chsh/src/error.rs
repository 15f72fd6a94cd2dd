use std::path::PathBuf;

use thiserror::Error;

/// Input errors; every variant maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{context}: {source}")]
    Invalid {
        context: String,
        #[source]
        source: chsh_core::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(context: impl Into<String>, source: chsh_core::Error) -> Self {
        Self::Invalid { context: context.into(), source }
    }
}
