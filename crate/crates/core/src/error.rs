use thiserror::Error;

/// Failure classes shared by every module.
///
/// The classes are coarse on purpose: the command-line surface maps each one
/// onto a fixed exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input (graph6, strip descriptions).
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// A configured size, count or state budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally inconsistent data, e.g. a map entry out of range.
    #[error("structural error: {0}")]
    Structural(String),

    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A certificate (naturality, Yoneda extraction) could not be issued.
    #[error("certification failed: {0}")]
    Certification(String),

    /// A lazy membership or inverse oracle failed.
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(offset: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }
}
