use thiserror::Error;

/// Errors produced while parsing, encoding, solving or mining.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed CSV or DIMACS input. Carries the 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The requested support threshold cannot be met by any pattern
    /// (e.g. an absolute threshold larger than the transaction count).
    #[error("infeasible threshold: {0}")]
    InfeasibleThreshold(String),

    /// Invalid option combination or out-of-range parameter.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A decoded model violates an encoder guarantee. Always a bug.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    /// Maximal-chain enumeration exceeded the configured cap.
    #[error("maximal chain count exceeds cap of {cap}")]
    ChainOverflow { cap: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
