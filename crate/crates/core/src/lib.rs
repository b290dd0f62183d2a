//! Code navigation over Python repositories: a typed file dependency graph
//! (imports, inheritance, instantiation), BM25 file search, a JSON-RPC tool
//! server exposing both, and scoring of agent transcripts against gold file
//! sets.

pub mod error;
pub mod extractor;
pub mod graph;
pub mod index;
pub mod metrics;
pub mod path;
pub mod report;
pub mod search;
pub mod toolserver;

pub use error::{Error, Result};
pub use graph::{ArchitecturalContext, CodeGraph, DependencyEdge, EdgeKind};
pub use index::RepoIndex;
pub use path::ModulePath;
pub use search::{SearchIndex, SearchResult};
