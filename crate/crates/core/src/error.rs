use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: syntax error: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("invalid module path {0:?}")]
    InvalidPath(String),

    #[error("edge {from} -> {to} ({kind}) references a file outside the graph")]
    DanglingEdge { from: String, to: String, kind: String },

    #[error("file not found in graph: {0}")]
    FileNotInGraph(String),

    #[error("graph format: {0}")]
    Format(String),

    #[error("transcript {0} contains no parseable lines")]
    EmptyTranscript(String),

    #[error("task spec: {0}")]
    Task(String),

    #[error("{0}")]
    Contract(&'static str),

    #[error("welch t undefined: both samples have zero variance and equal means")]
    UndefinedStatistic,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
