use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("partition covers {got} nodes, graph has {expected}")]
    PartitionSize { got: usize, expected: usize },

    #[error("partition community ids are not dense in [0, {0})")]
    PartitionIds(usize),

    #[error("distribution is not normalized (sum = {0})")]
    Unnormalized(f64),

    #[error("empty input sequence")]
    EmptySequence,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    IoPlain(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_at(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
