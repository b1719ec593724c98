use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] rankmetric::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Every error is a usage or configuration problem; findings are
    /// reported through certificates, not errors.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
