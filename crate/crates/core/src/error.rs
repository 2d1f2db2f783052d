use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    /// A structural invariant of an input value does not hold; the string names the clause.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// An operation was called outside its domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Shape(_) | Error::Invariant(_) | Error::Precondition(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
