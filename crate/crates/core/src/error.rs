use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two elements belong to different rings, or an operation mixed
    /// incompatible truncation levels.
    #[error("operand mismatch: {0}")]
    Mismatch(String),

    /// A ring, map or extension failed its construction checks.
    #[error("construction failed: {0}")]
    Construction(String),

    /// A brute-force enumeration would exceed the configured bound.
    #[error("enumeration bound {bound} exceeded while {context}")]
    BoundExceeded { bound: u64, context: String },

    /// The input is outside the class of rings the algorithms handle.
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A singular matrix was passed where an invertible one is required.
    #[error("matrix is singular: {0}")]
    Singular(String),

    /// Parse error in an input document, with a 1-based line number.
    #[error("input error at line {line}: {msg}")]
    Input { line: usize, msg: String },

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub(crate) fn out_of_scope(msg: impl Into<String>) -> Self {
        Error::OutOfScope(msg.into())
    }

    pub(crate) fn bound(bound: u64, context: impl Into<String>) -> Self {
        Error::BoundExceeded {
            bound,
            context: context.into(),
        }
    }
}
