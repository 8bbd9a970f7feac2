use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for instance of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("self-comparison of element {0} is not allowed")]
    SelfComparison(usize),

    #[error("invalid cluster profile: {0}")]
    InvalidProfile(String),

    #[error("at least two clusters required")]
    TooFewClusters,

    #[error("no valid L1: every L >= 2 has C(L) = n")]
    NoValidL1,

    #[error("{0}")]
    Usage(String),

    #[error("instance does not realize the given profile")]
    ProfileMismatch,

    #[error("cluster assignment is not chain-consistent: cluster {0}")]
    NotAChain(usize),

    /// An adversary construction failed in a way its guarantee rules out.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
