use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node `{token}` does not appear in the graph")]
    UnknownNode { line: usize, token: String },

    #[error("node `{token}` is assigned to both `{first}` and `{second}`")]
    ConflictingCluster {
        token: String,
        first: String,
        second: String,
    },

    #[error("node `{token}` has no cluster assignment")]
    MissingCluster { token: String },

    #[error("graph has no cluster map")]
    NoClusters,

    #[error("unknown cluster `{0}`")]
    UnknownCluster(String),

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("({0}, {1}, {2}) is not a triangle of the graph")]
    NotATriangle(usize, usize, usize),

    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("tau_min must lie in [0, 1], got {0}")]
    InvalidTauMin(f64),

    #[error("{what}: expected {expected}, found {found}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid document at `{path}`: {message}")]
    Validation { path: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
