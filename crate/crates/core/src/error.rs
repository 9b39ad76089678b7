use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The requested scale is beyond a feasibility cap and `force` was not set.
    #[error("{what} at n={n} exceeds the feasibility cap n<={cap} (use force to override)")]
    ResourceCap {
        what: &'static str,
        n: u32,
        cap: u32,
    },

    /// The request can not be represented by the engine at all.
    #[error("{what} at n={n} is beyond the engine limit n<={limit}")]
    Unsupported {
        what: &'static str,
        n: u32,
        limit: u32,
    },

    /// The wall-clock budget ran out before the computation finished.
    #[error("time budget exhausted after {completed}/{total} subtasks")]
    TimeBudget { completed: u64, total: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
