use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set [1, {ground}]")]
    OutOfRange { element: usize, ground: usize },

    #[error("rank {rank} is out of range for a universe of {size} objects")]
    RankOutOfRange { rank: usize, size: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("scale exceeded: {0}")]
    ScaleExceeded(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
