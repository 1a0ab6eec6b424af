use std::path::PathBuf;

/// Errors produced while loading, summarizing, or scoring.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8")]
    InvalidUtf8 { path: PathBuf },
    #[error("{path}:{line}: malformed record: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("empty document `{doc_id}` in cluster `{cluster_id}`")]
    EmptyDocument { cluster_id: String, doc_id: String },
    #[error("empty reference `{author_id}` in cluster `{cluster_id}`")]
    EmptyReference {
        cluster_id: String,
        author_id: String,
    },
    #[error("cluster `{0}` contains no sentences")]
    EmptyCluster(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty distribution")]
    EmptyDistribution,
    #[error("background required")]
    BackgroundRequired,
    #[error("no scorable reference")]
    NoScorableReference,
    #[error("no references available")]
    NoReferences,
    #[error("peers required: need at least 2 candidate summaries, got {0}")]
    PeersRequired(usize),
    #[error("no successful clusters")]
    NoSuccessfulClusters,
    #[error("serialization error: {0}")]
    Serialization(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
