use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The three variants map onto distinct exit codes in the command-line front
/// end, so callers should not fold them together.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The arguments violate an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),
    /// The instance is well formed but exceeds an enumeration bound.
    #[error("beyond capability: {0}")]
    Capability(String),
    /// A property that should hold by construction was found violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capability(msg.into()))
}
