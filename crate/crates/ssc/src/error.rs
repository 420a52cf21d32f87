use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Kernel(#[from] ssc_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl Error {
    /// Parse and usage errors exit with 2, everything else with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Kernel(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn syntax(msg: impl Into<String>) -> Error {
    Error::Syntax(msg.into())
}
