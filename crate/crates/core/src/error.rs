use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed facet lists, generator strings or facet files.
    #[error("input error: {0}")]
    Input(String),

    /// An operation was called on an object it is not defined for.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The face poset is larger than the configured size guard allows.
    #[error("resource guard: face poset has {arcs} arcs, limit is {limit}")]
    Resource { arcs: usize, limit: usize },

    /// A consistency check inside the engine failed.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
