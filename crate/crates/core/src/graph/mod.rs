//! Dependency graph, 1-hop context queries and the on-disk format.

mod context;
mod model;
mod store;

pub use context::{
    architectural_context, parse_rendered, render_context, render_line, ArchitecturalContext, Direction, Neighbor,
    RenderedContext,
};
pub use model::{build_graph, CodeGraph, DependencyEdge, EdgeCounts, EdgeKind};
pub use store::{graph_from_json, graph_to_json, load_graph, save_graph, GRAPH_FORMAT_VERSION};
