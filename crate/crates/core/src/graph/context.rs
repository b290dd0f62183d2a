use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::model::{CodeGraph, EdgeKind};
use crate::path::ModulePath;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighbor {
    pub kind: EdgeKind,
    pub path: ModulePath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchitecturalContext {
    pub center: ModulePath,
    pub inbound: Vec<Neighbor>,
    pub outbound: Vec<Neighbor>,
    pub total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Inbound,
    Outbound,
}

impl Direction {
    pub fn arrow(self) -> char {
        match self {
            Direction::Inbound => '←',
            Direction::Outbound => '→',
        }
    }
}

/// 1-hop neighborhood, each side sorted kind-major then by path.
pub fn architectural_context(graph: &CodeGraph, file: &ModulePath) -> Result<ArchitecturalContext> {
    if !graph.contains(file) {
        return Err(Error::FileNotInGraph(file.to_string()));
    }
    let mut inbound = Vec::new();
    let mut outbound = Vec::new();
    for e in graph.edges() {
        if &e.target == file {
            inbound.push(Neighbor {
                kind: e.kind,
                path: e.source.clone(),
            });
        }
        if &e.source == file {
            outbound.push(Neighbor {
                kind: e.kind,
                path: e.target.clone(),
            });
        }
    }
    let key = |n: &Neighbor| (n.kind, n.path.clone());
    inbound.sort_by_key(key);
    outbound.sort_by_key(key);
    let total = inbound.len() + outbound.len();
    Ok(ArchitecturalContext {
        center: file.clone(),
        inbound,
        outbound,
        total,
    })
}

pub fn render_line(direction: Direction, kind: EdgeKind, path: &str) -> String {
    let tag = format!("[{kind}]");
    format!("{} {tag:<13} {path}", direction.arrow())
}

pub fn render_context(ctx: &ArchitecturalContext) -> String {
    let mut out = String::new();
    let sides = [(Direction::Inbound, &ctx.inbound), (Direction::Outbound, &ctx.outbound)];
    for (dir, list) in sides {
        for n in list {
            out.push_str(&render_line(dir, n.kind, n.path.as_str()));
            out.push('\n');
        }
    }
    out.push_str(&format!("Total: {} structural connections", ctx.total));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedContext {
    pub connections: Vec<(Direction, EdgeKind, String)>,
    pub total: usize,
}

/// Inverse of [`render_context`].
pub fn parse_rendered(text: &str) -> Result<RenderedContext> {
    let bad = |line: &str| Error::Format(format!("unrecognized context line {line:?}"));
    let mut connections = Vec::new();
    let mut total = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("Total: ") {
            let n = rest
                .strip_suffix(" structural connections")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| bad(line))?;
            total = Some(n);
            continue;
        }
        let mut chars = line.chars();
        let dir = match chars.next() {
            Some('←') => Direction::Inbound,
            Some('→') => Direction::Outbound,
            _ => return Err(bad(line)),
        };
        let rest = chars.as_str().trim_start();
        let rest = rest.strip_prefix('[').ok_or_else(|| bad(line))?;
        let (kind, path) = rest.split_once(']').ok_or_else(|| bad(line))?;
        connections.push((dir, kind.parse()?, path.trim_start().to_string()));
    }
    let total = total.ok_or_else(|| Error::Format("missing total line".into()))?;
    Ok(RenderedContext { connections, total })
}
