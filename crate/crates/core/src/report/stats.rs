use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::Group;
use crate::report::trials::TrialRecord;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupStats {
    pub mean: f64,
    /// Sample standard deviation, 0 when n = 1.
    pub std: f64,
    pub n: usize,
}

impl GroupStats {
    pub fn new(mean: f64, std: f64, n: usize) -> Self {
        GroupStats { mean, std, n }
    }

    pub fn from_values(values: &[f64]) -> Option<Self> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n == 1 {
            0.0
        } else {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        };
        Some(GroupStats { mean, std, n })
    }
}

pub type StatsKey = (String, Group);

/// ACS statistics per (condition, group), keys sorted.
pub fn aggregate(trials: &[TrialRecord]) -> BTreeMap<StatsKey, GroupStats> {
    let mut buckets: BTreeMap<StatsKey, Vec<f64>> = BTreeMap::new();
    for t in trials {
        buckets
            .entry((t.condition.clone(), t.group))
            .or_default()
            .push(t.metrics.acs);
    }
    buckets
        .into_iter()
        .filter_map(|(k, v)| GroupStats::from_values(&v).map(|s| (k, s)))
        .collect()
}

/// Share of trials that found every required file.
pub fn completion_rate(trials: &[TrialRecord]) -> Result<f64> {
    if trials.is_empty() {
        return Err(Error::Contract("completion rate of an empty trial list"));
    }
    let done = trials.iter().filter(|t| t.metrics.acs >= 1.0).count();
    Ok(done as f64 / trials.len() as f64)
}

/// Mean FCTC over trials that reached a required file at all.
pub fn mean_fctc(trials: &[TrialRecord]) -> Option<f64> {
    let hits: Vec<f64> = trials.iter().filter_map(|t| t.metrics.fctc).map(|f| f as f64).collect();
    (!hits.is_empty()).then(|| hits.iter().sum::<f64>() / hits.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McpAdoption {
    pub n: usize,
    pub used: usize,
    pub adoption: f64,
    pub mean_calls: f64,
    pub acs_when_used: Option<f64>,
    pub acs_when_unused: Option<f64>,
}

impl McpAdoption {
    pub fn unused(&self) -> usize {
        self.n - self.used
    }
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

pub fn mcp_adoption(trials: &[TrialRecord]) -> McpAdoption {
    let (used, unused): (Vec<&TrialRecord>, Vec<&TrialRecord>) = trials.iter().partition(|t| t.metrics.mcp_calls >= 1);
    let n = trials.len();
    let acs = |ts: &[&TrialRecord]| mean(&ts.iter().map(|t| t.metrics.acs).collect::<Vec<_>>());
    McpAdoption {
        n,
        used: used.len(),
        adoption: if n == 0 { 0.0 } else { used.len() as f64 / n as f64 },
        mean_calls: mean(&trials.iter().map(|t| t.metrics.mcp_calls as f64).collect::<Vec<_>>()).unwrap_or(0.0),
        acs_when_used: acs(&used),
        acs_when_unused: acs(&unused),
    }
}
