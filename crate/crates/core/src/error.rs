use thiserror::Error;

/// Errors raised by the toolkit. Verdicts that merely come out false are not
/// errors; they are returned as [`crate::Verdict::Fails`] with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside the supported range 1..={1}")]
    GroundSize(usize, usize),
    #[error("ground sets differ: n={0} vs n={1}")]
    GroundMismatch(usize, usize),
    #[error("subset {mask:#b} has elements outside [{n}]")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("trivial subdivision: {0}")]
    Trivial(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
