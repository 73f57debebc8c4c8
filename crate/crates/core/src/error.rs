use thiserror::Error;

/// Errors raised by library operations.
///
/// Outcomes that are answers (a graph is not isomorphic, a system is
/// infeasible, no connection exists) are returned as data, never as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("empty graph")]
    EmptyGraph,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("signed label {signed} on edge {edge} does not reduce to unsigned label {unsigned}")]
    SignMismatch {
        edge: usize,
        signed: String,
        unsigned: String,
    },

    #[error("signed structure covers {found} edges, graph has {expected}")]
    IncompleteSignedStructure { expected: usize, found: usize },

    #[error("incomplete connection: {0}")]
    IncompleteConnection(String),

    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),

    #[error("classes live on different graphs")]
    GraphMismatch,

    #[error("expression degree {degree} exceeds valence {valence}")]
    DegreeTooLarge { degree: u32, valence: u32 },

    #[error("expression degree {degree} does not match valence {valence}")]
    DegreeMismatch { degree: u32, valence: u32 },

    #[error("localization sum is not constant: {0}")]
    NonConstantSum(String),

    #[error("graph is not equivariantly formal / not GKM-consistent: {0}")]
    Inconsistent(String),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, GkmError>;

impl GkmError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        GkmError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
