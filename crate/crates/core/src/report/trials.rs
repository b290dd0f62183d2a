use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{Group, TrialMetrics};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Timestamp {
    Number(f64),
    Text(String),
}

impl Timestamp {
    /// Numbers before text; text compares lexically, which orders ISO 8601.
    fn cmp_key(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Timestamp::Number(a), Timestamp::Number(b)) => a.total_cmp(b),
            (Timestamp::Text(a), Timestamp::Text(b)) => a.cmp(b),
            (Timestamp::Number(_), Timestamp::Text(_)) => Ordering::Less,
            (Timestamp::Text(_), Timestamp::Number(_)) => Ordering::Greater,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub task_id: String,
    pub group: Group,
    pub condition: String,
    pub run: u32,
    pub timestamp: Timestamp,
    pub transcript_path: String,
    pub metrics: TrialMetrics,
}

#[derive(Deserialize)]
struct TrialFile {
    task_id: String,
    condition: String,
    #[serde(default)]
    run: u32,
    #[serde(default)]
    timestamp: Option<Timestamp>,
    #[serde(default)]
    transcript_path: String,
    #[serde(default)]
    group: Option<Group>,
    metrics: TrialMetrics,
}

impl TrialRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: TrialFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let group = match f.group {
            Some(g) => g,
            None => Group::from_task_id(&f.task_id)
                .ok_or_else(|| Error::Format(format!("cannot infer group for task {:?}", f.task_id)))?,
        };
        if !(0.0..=1.0).contains(&f.metrics.acs) {
            return Err(Error::Format(format!(
                "{}: acs {} outside [0, 1]",
                f.task_id, f.metrics.acs
            )));
        }
        Ok(TrialRecord {
            task_id: f.task_id,
            group,
            condition: f.condition,
            run: f.run,
            timestamp: f.timestamp.unwrap_or(Timestamp::Number(0.0)),
            transcript_path: f.transcript_path,
            metrics: f.metrics,
        })
    }
}

/// One record per (task, condition, run), keeping the latest timestamp.
/// Output is sorted by that key.
pub fn dedupe_latest(trials: Vec<TrialRecord>) -> Vec<TrialRecord> {
    let mut keep: BTreeMap<(String, String, u32), TrialRecord> = BTreeMap::new();
    for t in trials {
        let key = (t.task_id.clone(), t.condition.clone(), t.run);
        match keep.get(&key) {
            Some(prev) if prev.timestamp.cmp_key(&t.timestamp) == Ordering::Greater => {}
            _ => {
                keep.insert(key, t);
            }
        }
    }
    keep.into_values().collect()
}

/// Every `*.json` file under `dir`, parsed and deduplicated.
pub fn load_results(dir: &Path) -> Result<Vec<TrialRecord>> {
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(&path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "json") {
            paths.push(entry.into_path());
        }
    }
    let mut out = Vec::with_capacity(paths.len());
    for p in paths {
        let text = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
        let rec = TrialRecord::from_json(&text).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
        out.push(rec);
    }
    Ok(dedupe_latest(out))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use std::collections::BTreeSet;

    pub(crate) fn trial(task: &str, cond: &str, acs: f64, mcp: usize) -> TrialRecord {
        TrialRecord {
            task_id: task.into(),
            group: Group::from_task_id(task).unwrap(),
            condition: cond.into(),
            run: 0,
            timestamp: Timestamp::Number(0.0),
            transcript_path: String::new(),
            metrics: TrialMetrics {
                acs,
                fctc: (acs > 0.0).then_some(1),
                mcp_calls: mcp,
                veto_event: false,
                files_accessed: BTreeSet::new(),
            },
        }
    }

    #[test]
    fn parse_with_inferred_group() {
        let r = TrialRecord::from_json(
            r#"{"task_id":"task_23","condition":"C","run":1,"timestamp":"2026-01-02T03:04:05Z",
                "transcript_path":"t.jsonl","metrics":{"acs":1.0,"fctc":2,"mcp_calls":1,"veto_event":true}}"#,
        )
        .unwrap();
        assert_eq!(r.group, Group::G3);
        assert_eq!(r.metrics.fctc, Some(2));
        assert!(r.metrics.files_accessed.is_empty());
    }

    #[test]
    fn rejects_bad_records() {
        assert!(TrialRecord::from_json(r#"{"task_id":"x","condition":"A","metrics":{"acs":1.0}}"#).is_err());
        assert!(TrialRecord::from_json(r#"{"task_id":"task_1","condition":"A","metrics":{"acs":1.5}}"#).is_err());
        assert!(TrialRecord::from_json("{").is_err());
    }

    #[test]
    fn latest_wins() {
        let mut a = trial("task_01", "A", 0.5, 0);
        a.timestamp = Timestamp::Text("2026-01-01T00:00:00Z".into());
        let mut b = trial("task_01", "A", 1.0, 0);
        b.timestamp = Timestamp::Text("2026-02-01T00:00:00Z".into());
        let mut c = trial("task_01", "A", 0.0, 0);
        c.run = 1;
        let out = dedupe_latest(vec![b.clone(), a.clone(), c.clone()]);
        assert_eq!(out, [b.clone(), c.clone()]);
        assert_eq!(dedupe_latest(vec![a, b.clone()]), [b]);
    }
}
