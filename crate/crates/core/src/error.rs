use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied an argument outside an operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} not found; available: {available}")]
    NotFound { what: String, available: String },

    #[error("template violates placeholder contract: {0}")]
    Placeholder(String),

    #[error("missing binding for placeholder {{{0}}}")]
    MissingBinding(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("transport error for {tag} after {attempts} attempt(s): {message}")]
    Transport {
        tag: String,
        attempts: u32,
        message: String,
    },

    #[error("provider contract violated: {0}")]
    ProviderContract(String),

    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
