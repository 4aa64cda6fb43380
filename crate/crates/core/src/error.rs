use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad parameters or mismatched operands.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input falls outside the domain of an operation (precondition violated
    /// for mathematical rather than syntactic reasons).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} needs {needed} but the limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// A group generator moves a codeword outside the code.
    #[error("generator {generator} does not preserve the code: codeword {codeword:?} maps to {image:?}")]
    NotPreserved {
        generator: usize,
        codeword: Vec<usize>,
        image: Vec<usize>,
    },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::NotPreserved { .. } => 4,
            _ => 2,
        }
    }
}
