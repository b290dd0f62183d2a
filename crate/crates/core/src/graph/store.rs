use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::model::{build_graph, CodeGraph, DependencyEdge};
use crate::path::ModulePath;

pub const GRAPH_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    version: u32,
    nodes: Vec<ModulePath>,
    edges: Vec<DependencyEdge>,
}

pub fn graph_to_json(graph: &CodeGraph) -> String {
    let doc = GraphFile {
        version: GRAPH_FORMAT_VERSION,
        nodes: graph.nodes().iter().cloned().collect(),
        edges: graph.edges().iter().cloned().collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<CodeGraph> {
    let doc: GraphFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.version != GRAPH_FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {}", doc.version)));
    }
    let n_nodes = doc.nodes.len();
    let n_edges = doc.edges.len();
    let graph = build_graph(doc.nodes, doc.edges).map_err(|e| Error::Format(e.to_string()))?;
    if graph.nodes().len() != n_nodes || graph.edges().len() != n_edges {
        return Err(Error::Format("duplicate node or edge records".into()));
    }
    Ok(graph)
}

pub fn save_graph(graph: &CodeGraph, path: &Path) -> Result<()> {
    fs::write(path, graph_to_json(graph)).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: &Path) -> Result<CodeGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    graph_from_json(&text)
}
