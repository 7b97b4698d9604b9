use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid state: {0}")]
    InvalidState(rbnlab::Error),
    #[error("invalid flags: {0}")]
    Flags(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::InvalidState(_) => 3,
            CliError::Flags(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<rbnlab::Error> for CliError {
    fn from(e: rbnlab::Error) -> Self {
        CliError::Flags(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
