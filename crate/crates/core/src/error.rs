use alloc::string::String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ill-formed: {0}")]
    IllFormed(String),
    #[error("cannot infer a type for {0}; it needs a type to check against")]
    NotInferable(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("generator exhausted")]
    Exhausted,
    #[error("step {index}: {message}")]
    StepMismatch { index: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! ill {
    ($($arg:tt)*) => {
        $crate::error::Error::IllFormed(alloc::format!($($arg)*))
    };
}
pub(crate) use ill;
