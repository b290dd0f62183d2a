use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::graph::{architectural_context, render_context, CodeGraph};
use crate::path::ModulePath;
use crate::search::{render_results, SearchIndex, DEFAULT_TOP_N};

pub const CONTEXT_TOOL: &str = "get_architectural_context";
pub const SEARCH_TOOL: &str = "semantic_search";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamType {
    String,
    Integer,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub ty: ParamType,
    pub required: bool,
    pub default: Option<Value>,
    pub description: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToolDescriptor {
    pub name: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
}

impl ToolDescriptor {
    /// JSON Schema object used in `tools/list` responses.
    pub fn input_schema(&self) -> Value {
        let mut props = Map::new();
        for p in &self.params {
            let mut prop = json!({ "type": p.ty, "description": p.description });
            if let Some(d) = &p.default {
                prop["default"] = d.clone();
            }
            props.insert(p.name.to_string(), prop);
        }
        let required: Vec<_> = self.params.iter().filter(|p| p.required).map(|p| p.name).collect();
        json!({ "type": "object", "properties": props, "required": required })
    }
}

pub fn list_tools() -> Vec<ToolDescriptor> {
    vec![
        ToolDescriptor {
            name: CONTEXT_TOOL,
            description: "List every file linked to the given file by an import, inheritance or \
                          instantiation edge, in both directions. Call it before changing a file \
                          to see what depends on it.",
            params: vec![ParamSpec {
                name: "file_path",
                ty: ParamType::String,
                required: true,
                default: None,
                description: "Repo-relative path, e.g. app/db/repositories/base.py",
            }],
        },
        ToolDescriptor {
            name: SEARCH_TOOL,
            description: "Rank repository files by the BM25 score of their best matching function \
                          or class chunk for a keyword query.",
            params: vec![
                ParamSpec {
                    name: "query",
                    ty: ParamType::String,
                    required: true,
                    default: None,
                    description: "Free-text query",
                },
                ParamSpec {
                    name: "top_n",
                    ty: ParamType::Integer,
                    required: false,
                    default: Some(json!(DEFAULT_TOP_N)),
                    description: "Maximum number of files to return",
                },
            ],
        },
    ]
}

/// Outcome of a tool invocation that reached the tool itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToolResponse {
    Ok(String),
    Err(String),
}

impl ToolResponse {
    pub fn ok(&self) -> bool {
        matches!(self, ToolResponse::Ok(_))
    }

    pub fn text(&self) -> &str {
        match self {
            ToolResponse::Ok(t) | ToolResponse::Err(t) => t,
        }
    }
}

/// Protocol-level failures, reported as JSON-RPC errors rather than tool output.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CallError {
    #[error("unknown tool: {0}")]
    UnknownTool(String),
    #[error("invalid params: {0}")]
    InvalidParams(String),
}

pub struct ToolServer {
    graph: CodeGraph,
    index: SearchIndex,
}

impl ToolServer {
    pub fn new(graph: CodeGraph, index: SearchIndex) -> Self {
        ToolServer { graph, index }
    }

    pub fn graph(&self) -> &CodeGraph {
        &self.graph
    }

    pub fn call_tool(&self, name: &str, arguments: &Value) -> Result<ToolResponse, CallError> {
        let empty = Map::new();
        let args = match arguments {
            Value::Object(m) => m,
            Value::Null => &empty,
            _ => return Err(CallError::InvalidParams("arguments must be an object".into())),
        };
        match name {
            CONTEXT_TOOL => {
                let file = required_str(args, "file_path")?;
                let not_found = || ToolResponse::Err(format!("file not found in graph: {file}"));
                let Ok(path) = ModulePath::new(file) else {
                    return Ok(not_found());
                };
                Ok(match architectural_context(&self.graph, &path) {
                    Ok(ctx) => ToolResponse::Ok(render_context(&ctx)),
                    Err(_) => not_found(),
                })
            }
            SEARCH_TOOL => {
                let query = required_str(args, "query")?;
                let top_n = match args.get("top_n") {
                    None | Some(Value::Null) => DEFAULT_TOP_N,
                    Some(v) => v
                        .as_u64()
                        .filter(|n| *n >= 1)
                        .map(|n| n as usize)
                        .ok_or_else(|| CallError::InvalidParams("top_n must be a positive integer".into()))?,
                };
                Ok(ToolResponse::Ok(render_results(&self.index.search(query, top_n))))
            }
            other => Err(CallError::UnknownTool(other.to_string())),
        }
    }
}

fn required_str<'a>(args: &'a Map<String, Value>, key: &str) -> Result<&'a str, CallError> {
    match args.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(CallError::InvalidParams(format!("{key} must be a string"))),
        None => Err(CallError::InvalidParams(format!("missing required argument {key}"))),
    }
}
