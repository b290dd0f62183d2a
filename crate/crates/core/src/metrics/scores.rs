use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::extract::{call_paths, files_accessed};
use crate::metrics::task::TaskSpec;
use crate::metrics::transcript::{ToolCallRecord, Transcript};
use crate::toolserver::{CONTEXT_TOOL, SEARCH_TOOL};

const TEXT_SEARCH_TOOLS: &[&str] = &["Grep", "Bash"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialMetrics {
    pub acs: f64,
    #[serde(default)]
    pub fctc: Option<usize>,
    #[serde(default)]
    pub mcp_calls: usize,
    #[serde(default)]
    pub veto_event: bool,
    #[serde(default)]
    pub files_accessed: BTreeSet<String>,
}

pub fn compute_acs(accessed: &BTreeSet<String>, required: &BTreeSet<String>) -> Result<f64> {
    if required.is_empty() {
        return Err(Error::Contract("required file set is empty"));
    }
    let hit = required.iter().filter(|r| accessed.contains(*r)).count();
    Ok(hit as f64 / required.len() as f64)
}

/// Ordinal of the first call whose own paths include a required file.
pub fn compute_fctc(t: &Transcript, required: &BTreeSet<String>, repo_prefix: &str) -> Option<usize> {
    t.calls
        .iter()
        .find(|c| call_paths(c, repo_prefix).iter().any(|p| required.contains(p)))
        .map(|c| c.ordinal)
}

/// `name` is `tool` itself or a namespaced form ending in `__tool`.
pub fn tool_matches(name: &str, tool: &str) -> bool {
    name == tool || name.strip_suffix(tool).is_some_and(|head| head.ends_with("__"))
}

pub fn count_mcp_calls(t: &Transcript) -> usize {
    t.calls
        .iter()
        .filter(|c| tool_matches(&c.tool_name, CONTEXT_TOOL) || tool_matches(&c.tool_name, SEARCH_TOOL))
        .count()
}

fn mentions_required(text: &str, required: &BTreeSet<String>) -> bool {
    required.iter().any(|r| text.contains(r.as_str()))
}

fn is_text_search(c: &ToolCallRecord) -> bool {
    TEXT_SEARCH_TOOLS.contains(&c.tool_name.as_str())
}

/// Text search came back without any required file while the graph tool
/// named at least one. Calls without a recorded result do not count.
pub fn detect_veto_event(t: &Transcript, required: &BTreeSet<String>) -> bool {
    let search_results: Vec<&str> = t
        .calls
        .iter()
        .filter(|c| is_text_search(c))
        .filter_map(|c| c.result_text.as_deref())
        .collect();
    let search_missed = !search_results.is_empty() && !search_results.iter().any(|r| mentions_required(r, required));
    let graph_hit = t
        .calls
        .iter()
        .filter(|c| tool_matches(&c.tool_name, CONTEXT_TOOL))
        .filter_map(|c| c.result_text.as_deref())
        .any(|r| mentions_required(r, required));
    search_missed && graph_hit
}

pub fn score_trial(t: &Transcript, task: &TaskSpec, repo_prefix: &str) -> Result<TrialMetrics> {
    let accessed = files_accessed(t, repo_prefix);
    Ok(TrialMetrics {
        acs: compute_acs(&accessed, &task.required_files)?,
        fctc: compute_fctc(t, &task.required_files, repo_prefix),
        mcp_calls: count_mcp_calls(t),
        veto_event: detect_veto_event(t, &task.required_files),
        files_accessed: accessed,
    })
}
