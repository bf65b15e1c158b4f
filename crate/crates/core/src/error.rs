use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variants carry enough context (module and location) for the CLI to print
/// a useful diagnostic without a backtrace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid DGA at {location}: {message}")]
    Dga { location: String, message: String },

    #[error("invalid diagram at {location}: {message}")]
    Diagram { location: String, message: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("branch error: {0}")]
    Branch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
