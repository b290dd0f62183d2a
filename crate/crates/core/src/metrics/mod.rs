//! Navigation metrics computed from agent tool-call logs.

mod extract;
mod scores;
mod task;
mod transcript;

pub use extract::{call_paths, files_accessed, normalize_path};
pub use scores::{
    compute_acs, compute_fctc, count_mcp_calls, detect_veto_event, score_trial, tool_matches, TrialMetrics,
};
pub use task::{Group, TaskSpec};
pub use transcript::{parse_transcript, ToolCallRecord, Transcript};
