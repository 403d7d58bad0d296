use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text. `line` is 1-based for edge lists and is the
    /// byte offset for graph6 input.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    /// A precondition on the arguments was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive routine was asked to work beyond its size limit.
    #[error("capacity exceeded for {what}: {actual} > {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }

    pub(crate) fn check_cap(what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::Capacity {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
