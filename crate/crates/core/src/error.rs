use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A decoder could not produce a consistent estimate.
    #[error("decoding failed: {0}")]
    Decode(#[from] DecodeError),
    /// An exhaustive routine refused to run because the input is too large.
    #[error("refused: {0}")]
    Refused(String),
    /// A guarantee that should hold for valid parameters was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

/// The distinct ways a decoder can fail. Every variant means the received
/// word carries more errors than the code was designed for (or the
/// parameters were misused).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("linear system for the error locator is inconsistent")]
    InconsistentSystem,
    #[error("locator polynomial has a repeated root")]
    RepeatedRoot,
    #[error("locator polynomial does not split into distinct linear factors")]
    NotSplitting,
    #[error("removed labels are not a subset of the received characteristic set")]
    RemovedNotReceived,
    #[error("estimated label set has {got} elements, expected {expected}")]
    WrongSetSize { expected: usize, got: usize },
    #[error("not a valid characteristic set: {0}")]
    NotCharacteristicSet(String),
    #[error("recovered permutation does not match the syndrome")]
    SyndromeMismatch,
    #[error("no syndrome candidate within the error budget")]
    NoCandidate,
    #[error("received word has the wrong length: {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

impl DecodeError {
    /// A short stable name, used in failure tallies.
    pub fn kind(&self) -> &'static str {
        match self {
            DecodeError::InconsistentSystem => "inconsistent_system",
            DecodeError::RepeatedRoot => "repeated_root",
            DecodeError::NotSplitting => "not_splitting",
            DecodeError::RemovedNotReceived => "removed_not_received",
            DecodeError::WrongSetSize { .. } => "wrong_set_size",
            DecodeError::NotCharacteristicSet(_) => "not_characteristic_set",
            DecodeError::SyndromeMismatch => "syndrome_mismatch",
            DecodeError::NoCandidate => "no_candidate",
            DecodeError::WrongLength { .. } => "wrong_length",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
