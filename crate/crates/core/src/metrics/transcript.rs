use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolCallRecord {
    /// 1-based position among tool calls.
    pub ordinal: usize,
    pub tool_name: String,
    pub arguments: Map<String, Value>,
    pub result_text: Option<String>,
}

impl ToolCallRecord {
    pub fn arg_str(&self, key: &str) -> Option<&str> {
        self.arguments.get(key).and_then(Value::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub calls: Vec<ToolCallRecord>,
    pub source_path: String,
    /// Non-blank lines that were not valid JSON.
    pub warnings: usize,
}

impl Transcript {
    pub fn from_calls(calls: impl IntoIterator<Item = (String, Map<String, Value>, Option<String>)>) -> Self {
        let calls = calls
            .into_iter()
            .enumerate()
            .map(|(i, (tool_name, arguments, result_text))| ToolCallRecord {
                ordinal: i + 1,
                tool_name,
                arguments,
                result_text,
            })
            .collect();
        Transcript {
            calls,
            source_path: String::new(),
            warnings: 0,
        }
    }
}

/// Text of a `tool_result` content field: a string, or an array of blocks
/// whose `text` fields are joined with newlines.
fn result_text(content: &Value) -> Option<String> {
    match content {
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Vec<&str> = items
                .iter()
                .filter_map(|b| match b {
                    Value::String(s) => Some(s.as_str()),
                    other => other.get("text").and_then(Value::as_str),
                })
                .collect();
            Some(parts.join("\n"))
        }
        Value::Null => None,
        other => Some(other.to_string()),
    }
}

struct Builder {
    calls: Vec<ToolCallRecord>,
    by_id: HashMap<String, usize>,
}

impl Builder {
    fn push(&mut self, id: Option<&str>, name: &str, input: Option<&Value>, result: Option<String>) {
        let idx = self.calls.len();
        let arguments = match input {
            Some(Value::Object(m)) => m.clone(),
            _ => Map::new(),
        };
        self.calls.push(ToolCallRecord {
            ordinal: idx + 1,
            tool_name: name.to_string(),
            arguments,
            result_text: result,
        });
        if let Some(id) = id {
            self.by_id.insert(id.to_string(), idx);
        }
    }

    fn attach(&mut self, id: &str, text: String) {
        if let Some(&idx) = self.by_id.get(id) {
            let slot = &mut self.calls[idx].result_text;
            match slot {
                Some(prev) => {
                    prev.push('\n');
                    prev.push_str(&text);
                }
                None => *slot = Some(text),
            }
        }
    }

    fn content_items(&mut self, items: &[Value]) {
        for item in items {
            match item.get("type").and_then(Value::as_str) {
                Some("tool_use") => {
                    if let Some(name) = item.get("name").and_then(Value::as_str) {
                        self.push(item.get("id").and_then(Value::as_str), name, item.get("input"), None);
                    }
                }
                Some("tool_result") => {
                    let id = item.get("tool_use_id").and_then(Value::as_str);
                    let text = item.get("content").and_then(result_text);
                    if let (Some(id), Some(text)) = (id, text) {
                        self.attach(id, text);
                    }
                }
                _ => {}
            }
        }
    }

    fn record(&mut self, obj: &Value) {
        let content = obj
            .get("message")
            .and_then(|m| m.get("content"))
            .or_else(|| obj.get("content"));
        if let Some(Value::Array(items)) = content {
            self.content_items(items);
            return;
        }
        if let Some(tool) = obj.get("tool").and_then(Value::as_str) {
            let result = obj.get("result").and_then(result_text);
            self.push(obj.get("id").and_then(Value::as_str), tool, obj.get("args"), result);
        }
    }
}

/// Tool calls from a line-delimited JSON log, in log order, with results
/// paired by call id.
pub fn parse_transcript(text: &str, source_path: &str) -> Result<Transcript> {
    let mut b = Builder {
        calls: Vec::new(),
        by_id: HashMap::new(),
    };
    let mut parsed = 0usize;
    let mut warnings = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match serde_json::from_str::<Value>(line) {
            Ok(v) => {
                parsed += 1;
                b.record(&v);
            }
            Err(_) => warnings += 1,
        }
    }
    if parsed == 0 {
        return Err(Error::EmptyTranscript(source_path.to_string()));
    }
    Ok(Transcript {
        calls: b.calls,
        source_path: source_path.to_string(),
        warnings,
    })
}
