use std::io::{self, BufRead, Write};

use serde_json::{json, Value};

use crate::toolserver::tools::{list_tools, CallError, ToolServer};

pub const PARSE_ERROR: i64 = -32700;
pub const INVALID_REQUEST: i64 = -32600;
pub const METHOD_NOT_FOUND: i64 = -32601;
pub const INVALID_PARAMS: i64 = -32602;

pub const PROTOCOL_VERSION: &str = "2024-11-05";

fn error(id: Value, code: i64, message: impl Into<String>) -> Value {
    json!({ "jsonrpc": "2.0", "id": id, "error": { "code": code, "message": message.into() } })
}

fn success(id: Value, result: Value) -> Value {
    json!({ "jsonrpc": "2.0", "id": id, "result": result })
}

impl ToolServer {
    /// Answer one request line. `None` for notifications and blank lines.
    pub fn handle_line(&self, line: &str) -> Option<Value> {
        let line = line.trim();
        if line.is_empty() {
            return None;
        }
        let msg: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => return Some(error(Value::Null, PARSE_ERROR, format!("parse error: {e}"))),
        };
        let Some(obj) = msg.as_object() else {
            return Some(error(Value::Null, INVALID_REQUEST, "request must be a JSON object"));
        };
        let id = obj.get("id").cloned();
        let Some(method) = obj.get("method").and_then(Value::as_str) else {
            return Some(error(id.unwrap_or(Value::Null), INVALID_REQUEST, "missing method"));
        };
        let id = id?;
        let params = obj.get("params").cloned().unwrap_or(Value::Null);
        Some(match method {
            "initialize" => {
                let version = params
                    .get("protocolVersion")
                    .and_then(Value::as_str)
                    .unwrap_or(PROTOCOL_VERSION)
                    .to_string();
                success(
                    id,
                    json!({
                        "protocolVersion": version,
                        "capabilities": { "tools": {} },
                        "serverInfo": { "name": "codenav", "version": env!("CARGO_PKG_VERSION") },
                    }),
                )
            }
            "ping" => success(id, json!({})),
            "tools/list" => {
                let tools: Vec<Value> = list_tools()
                    .iter()
                    .map(|t| json!({ "name": t.name, "description": t.description, "inputSchema": t.input_schema() }))
                    .collect();
                success(id, json!({ "tools": tools }))
            }
            "tools/call" => {
                let Some(name) = params.get("name").and_then(Value::as_str) else {
                    return Some(error(id, INVALID_PARAMS, "tools/call requires a tool name"));
                };
                let args = params.get("arguments").cloned().unwrap_or(Value::Null);
                match self.call_tool(name, &args) {
                    Ok(resp) => success(
                        id,
                        json!({
                            "content": [{ "type": "text", "text": resp.text() }],
                            "isError": !resp.ok(),
                        }),
                    ),
                    Err(e @ CallError::UnknownTool(_)) => error(id, METHOD_NOT_FOUND, e.to_string()),
                    Err(e @ CallError::InvalidParams(_)) => error(id, INVALID_PARAMS, e.to_string()),
                }
            }
            other => error(id, METHOD_NOT_FOUND, format!("method not found: {other}")),
        })
    }

    /// Newline-delimited JSON-RPC over the given streams until EOF.
    pub fn serve<R: BufRead, W: Write>(&self, mut input: R, mut output: W) -> io::Result<()> {
        let mut buf = Vec::new();
        loop {
            buf.clear();
            if input.read_until(b'\n', &mut buf)? == 0 {
                return Ok(());
            }
            let line = String::from_utf8_lossy(&buf);
            if let Some(resp) = self.handle_line(&line) {
                serde_json::to_writer(&mut output, &resp)?;
                output.write_all(b"\n")?;
                output.flush()?;
            }
        }
    }
}
