//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use codenav_core::metrics::Transcript;
use proptest::prelude::*;
use serde_json::{json, Map, Value};

pub const PREFIX: &str = "/work/repo";

pub fn corpus_root() -> PathBuf {
    match std::env::var_os("REALWORLD_REPO") {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/realworld/repo"),
    }
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Paths a generated transcript may mention. The last two are outside
/// the metric's scope when read directly or through the shell.
pub const POOL: &[&str] = &[
    "app/main.py",
    "app/db/repositories/base.py",
    "app/api/dependencies/database.py",
    "app/services/jwt.py",
    "tests/test_api/test_login.py",
    "app/templates/page.html",
    "README.md",
];

/// Whether a directly read pool path is counted.
pub fn counted_on_read(p: &str) -> bool {
    p.ends_with(".py") || p.starts_with("app/") || p.starts_with("tests/")
}

/// Whether a pool path is picked up from a shell command.
pub fn counted_in_shell(p: &str) -> bool {
    (p.starts_with("app/") || p.starts_with("tests/")) && p.ends_with(".py")
}

/// One synthetic call plus what it is known to touch and report.
#[derive(Clone, Debug)]
pub struct GenCall {
    pub name: String,
    pub args: Map<String, Value>,
    pub result: Option<String>,
    /// Repo-relative paths the call accesses.
    pub touched: BTreeSet<String>,
    /// Pool paths embedded in the result text.
    pub reported: BTreeSet<String>,
}

const NAMES: &[&str] = &[
    "Read",
    "Edit",
    "Write",
    "Bash",
    "Grep",
    "Glob",
    "get_architectural_context",
    "mcp__codenav__get_architectural_context",
    "semantic_search",
    "mcp__codenav__semantic_search",
    "TodoWrite",
];

fn spelled(path: &str, style: u8) -> String {
    match style {
        0 => format!("{PREFIX}/{path}"),
        1 => format!("{PREFIX}/./{path}"),
        2 => format!("./{path}"),
        _ => path.to_string(),
    }
}

fn result_with(paths: &[&str], style: u8) -> String {
    if paths.is_empty() {
        return ["", "No matches found", "(no matches)"][style as usize % 3].to_string();
    }
    paths
        .iter()
        .map(|p| format!("{p}:12: match"))
        .collect::<Vec<_>>()
        .join("\n")
}

prop_compose! {
    pub fn gen_call()(
        name in 0..NAMES.len(),
        target in 0..POOL.len(),
        style in 0u8..4,
        shell_paths in proptest::collection::vec(0..POOL.len(), 0..4),
        result_paths in proptest::collection::vec(0..POOL.len(), 0..3),
        has_result in any::<bool>(),
    ) -> GenCall {
        let name = NAMES[name].to_string();
        let mut args = Map::new();
        let mut touched = BTreeSet::new();
        match name.as_str() {
            "Read" | "Edit" | "Write" => {
                let p = POOL[target];
                args.insert("file_path".into(), json!(spelled(p, style)));
                if counted_on_read(p) {
                    touched.insert(p.to_string());
                }
            }
            "Bash" => {
                let mut cmd = String::from("grep -rn needle");
                for &i in &shell_paths {
                    cmd.push(' ');
                    cmd.push_str(POOL[i]);
                    if counted_in_shell(POOL[i]) {
                        touched.insert(POOL[i].to_string());
                    }
                }
                args.insert("command".into(), json!(cmd));
            }
            "Grep" => {
                args.insert("pattern".into(), json!("needle"));
            }
            "Glob" => {
                args.insert("pattern".into(), json!("**/*.py"));
            }
            n if n.ends_with("get_architectural_context") => {
                args.insert("file_path".into(), json!(POOL[target]));
            }
            n if n.ends_with("semantic_search") => {
                args.insert("query".into(), json!("needle"));
            }
            _ => {}
        }
        let reported_list: Vec<&str> = result_paths.iter().map(|&i| POOL[i]).collect();
        let (result, reported) = if has_result {
            (Some(result_with(&reported_list, style)), reported_list.iter().map(|s| s.to_string()).collect())
        } else {
            (None, BTreeSet::new())
        };
        GenCall { name, args, result, touched, reported }
    }
}

pub fn gen_required() -> impl Strategy<Value = BTreeSet<String>> {
    proptest::sample::subsequence(POOL[..5].to_vec(), 1..=5).prop_map(|v| v.into_iter().map(str::to_string).collect())
}

pub fn gen_calls(max: usize) -> impl Strategy<Value = Vec<GenCall>> {
    proptest::collection::vec(gen_call(), 0..=max)
}

pub fn to_transcript(calls: &[GenCall]) -> Transcript {
    Transcript::from_calls(calls.iter().map(|c| (c.name.clone(), c.args.clone(), c.result.clone())))
}

/// Encodes calls as a JSONL log, alternating envelope shapes.
pub fn to_jsonl(calls: &[GenCall]) -> String {
    let mut out = String::new();
    for (i, c) in calls.iter().enumerate() {
        let id = format!("toolu_{i:04}");
        let line = if i % 3 == 2 {
            let mut v = json!({ "tool": c.name, "args": c.args });
            if let Some(r) = &c.result {
                v["result"] = json!(r);
            }
            v
        } else {
            json!({ "type": "assistant", "message": { "role": "assistant", "content": [
                { "type": "text", "text": "step" },
                { "type": "tool_use", "id": id, "name": c.name, "input": c.args }
            ]}})
        };
        out.push_str(&line.to_string());
        out.push('\n');
        if i % 3 != 2 {
            if let Some(r) = &c.result {
                let content = if i % 2 == 0 {
                    json!(r)
                } else {
                    json!([{ "type": "text", "text": r }])
                };
                let v = json!({ "type": "user", "message": { "role": "user", "content": [
                    { "type": "tool_result", "tool_use_id": id, "content": content }
                ]}});
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    out
}

// Naive oracles over the generator's own bookkeeping.

pub fn oracle_accessed(calls: &[GenCall]) -> BTreeSet<String> {
    calls.iter().flat_map(|c| c.touched.iter().cloned()).collect()
}

pub fn oracle_acs(accessed: &BTreeSet<String>, required: &BTreeSet<String>) -> f64 {
    let mut hit = 0usize;
    for r in required {
        if accessed.contains(r) {
            hit += 1;
        }
    }
    hit as f64 / required.len() as f64
}

pub fn oracle_fctc(calls: &[GenCall], required: &BTreeSet<String>) -> Option<usize> {
    let mut i = 0;
    while i < calls.len() {
        if calls[i].touched.iter().any(|p| required.contains(p)) {
            return Some(i + 1);
        }
        i += 1;
    }
    None
}

pub fn oracle_mcp(calls: &[GenCall]) -> usize {
    calls
        .iter()
        .filter(|c| {
            matches!(
                c.name.as_str(),
                "get_architectural_context"
                    | "mcp__codenav__get_architectural_context"
                    | "semantic_search"
                    | "mcp__codenav__semantic_search"
            )
        })
        .count()
}

pub fn oracle_veto(calls: &[GenCall], required: &BTreeSet<String>) -> bool {
    let searches: Vec<&GenCall> = calls
        .iter()
        .filter(|c| (c.name == "Grep" || c.name == "Bash") && c.result.is_some())
        .collect();
    let clause_a = !searches.is_empty() && searches.iter().all(|c| c.reported.is_disjoint(required));
    let clause_b = calls.iter().any(|c| {
        (c.name == "get_architectural_context" || c.name == "mcp__codenav__get_architectural_context")
            && c.result.is_some()
            && !c.reported.is_disjoint(required)
    });
    clause_a && clause_b
}
