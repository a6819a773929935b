use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad degree, dimension, modulus, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The pair (d, n) = (3, 1) is excluded from the level-structure statements.
    #[error("(d, n) = (3, 1) is the excluded case: plane cubics carry automorphisms acting trivially on H^1")]
    ExcludedCase,

    /// A configured search or oracle budget was exhausted.
    #[error("budget exhausted: {0}")]
    Budget(String),

    /// Two exact routes to the same quantity disagreed.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("store error at {path}:{line}: {msg}")]
    Store {
        path: String,
        line: usize,
        msg: String,
    },

    /// A recomputed payload differs from the record already in the store.
    #[error("store divergence for {kind} (d={d}, n={n}): recomputed payload differs from stored record")]
    Divergence { kind: String, d: u32, n: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the CLI: 2 for resource exhaustion, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 2,
            _ => 1,
        }
    }
}
