use thiserror::Error;

/// Toolkit error type.
///
/// The three analysis-facing variants map onto the CLI exit-code contract:
/// usage errors (bad arguments, violated preconditions) are distinct from
/// capability errors (input exceeds a configured desk-scale limit) which are
/// distinct from budget exhaustion (a bounded search ran out of node
/// expansions before reaching a verdict).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("budget exhausted after {spent} node expansions")]
    Budget { spent: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
