use std::collections::BTreeSet;
use std::sync::LazyLock;

use regex::Regex;

use crate::metrics::transcript::{ToolCallRecord, Transcript};

static SHELL_PATH: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?:app|tests)/[A-Za-z0-9_./-]*\.py").expect("static pattern"));

const FILE_TOOLS: &[&str] = &["Read", "Edit", "Write"];

/// Repo-relative form of an agent-supplied path.
pub fn normalize_path(raw: &str, repo_prefix: &str) -> String {
    let prefix = repo_prefix.trim_end_matches('/');
    let mut p = raw.trim();
    if !prefix.is_empty() {
        if let Some(rest) = p.strip_prefix(prefix) {
            if rest.is_empty() || rest.starts_with('/') {
                p = rest;
            }
        }
    }
    let mut p = p.trim_start_matches('/');
    while let Some(rest) = p.strip_prefix("./") {
        p = rest.trim_start_matches('/');
    }
    p.to_string()
}

fn in_scope(path: &str) -> bool {
    path.ends_with(".py") || path.starts_with("app/") || path.starts_with("tests/")
}

/// Paths a single call touched, normalized, in argument order.
pub fn call_paths(call: &ToolCallRecord, repo_prefix: &str) -> Vec<String> {
    let name = call.tool_name.as_str();
    if FILE_TOOLS.contains(&name) {
        return call
            .arg_str("file_path")
            .map(|p| normalize_path(p, repo_prefix))
            .filter(|p| !p.is_empty() && in_scope(p))
            .into_iter()
            .collect();
    }
    if name == "Bash" {
        if let Some(cmd) = call.arg_str("command") {
            return SHELL_PATH
                .find_iter(cmd)
                .map(|m| normalize_path(m.as_str(), repo_prefix))
                .collect();
        }
    }
    Vec::new()
}

pub fn files_accessed(t: &Transcript, repo_prefix: &str) -> BTreeSet<String> {
    t.calls.iter().flat_map(|c| call_paths(c, repo_prefix)).collect()
}
