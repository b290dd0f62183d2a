use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::ModulePath;

/// Declaration order is the display order: IMPORTS < INHERITS < INSTANTIATES.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EdgeKind {
    Imports,
    Inherits,
    Instantiates,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 3] = [EdgeKind::Imports, EdgeKind::Inherits, EdgeKind::Instantiates];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Imports => "IMPORTS",
            EdgeKind::Inherits => "INHERITS",
            EdgeKind::Instantiates => "INSTANTIATES",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IMPORTS" => Ok(EdgeKind::Imports),
            "INHERITS" => Ok(EdgeKind::Inherits),
            "INSTANTIATES" => Ok(EdgeKind::Instantiates),
            other => Err(Error::Format(format!("unknown edge kind {other:?}"))),
        }
    }
}

/// Field order gives the canonical sort: source, target, kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DependencyEdge {
    pub source: ModulePath,
    pub target: ModulePath,
    pub kind: EdgeKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCounts {
    pub imports: usize,
    pub inherits: usize,
    pub instantiates: usize,
}

impl EdgeCounts {
    pub fn total(&self) -> usize {
        self.imports + self.inherits + self.instantiates
    }

    pub fn get(&self, kind: EdgeKind) -> usize {
        match kind {
            EdgeKind::Imports => self.imports,
            EdgeKind::Inherits => self.inherits,
            EdgeKind::Instantiates => self.instantiates,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodeGraph {
    nodes: BTreeSet<ModulePath>,
    edges: BTreeSet<DependencyEdge>,
}

impl CodeGraph {
    pub fn nodes(&self) -> &BTreeSet<ModulePath> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<DependencyEdge> {
        &self.edges
    }

    pub fn contains(&self, file: &ModulePath) -> bool {
        self.nodes.contains(file)
    }

    pub fn counts(&self) -> EdgeCounts {
        let mut c = EdgeCounts::default();
        for e in &self.edges {
            match e.kind {
                EdgeKind::Imports => c.imports += 1,
                EdgeKind::Inherits => c.inherits += 1,
                EdgeKind::Instantiates => c.instantiates += 1,
            }
        }
        c
    }

    pub fn summary_line(&self) -> String {
        let c = self.counts();
        format!(
            "nodes={} edges={} imports={} inherits={} instantiates={}",
            self.nodes.len(),
            c.total(),
            c.imports,
            c.inherits,
            c.instantiates
        )
    }
}

pub fn build_graph(
    files: impl IntoIterator<Item = ModulePath>,
    edges: impl IntoIterator<Item = DependencyEdge>,
) -> Result<CodeGraph> {
    let nodes: BTreeSet<ModulePath> = files.into_iter().collect();
    let mut set = BTreeSet::new();
    for e in edges {
        if e.source == e.target || !nodes.contains(&e.source) || !nodes.contains(&e.target) {
            return Err(Error::DanglingEdge {
                from: e.source.to_string(),
                to: e.target.to_string(),
                kind: e.kind.to_string(),
            });
        }
        set.insert(e);
    }
    Ok(CodeGraph { nodes, edges: set })
}
