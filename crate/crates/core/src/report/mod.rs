//! Aggregation, significance testing and result tables over scored trials.

mod render;
mod stats;
mod trials;
mod welch;

pub use render::{render_comparison, render_report, stats_cell, Comparison};
pub use stats::{aggregate, completion_rate, mcp_adoption, mean_fctc, GroupStats, McpAdoption, StatsKey};
pub use trials::{dedupe_latest, load_results, Timestamp, TrialRecord};
pub use welch::{significance, welch_t, Significance, WelchResult};
