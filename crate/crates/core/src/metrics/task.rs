use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Task taxonomy by how the required files can be discovered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    G1,
    G2,
    G3,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::G1, Group::G2, Group::G3];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::G1 => "G1",
            Group::G2 => "G2",
            Group::G3 => "G3",
        }
    }

    /// Benchmark numbering: tasks 1-10 are G1, 11-20 G2, 21-30 G3.
    pub fn from_task_id(task_id: &str) -> Option<Group> {
        let digits: String = task_id.chars().rev().take_while(char::is_ascii_digit).collect();
        let n: u32 = digits.chars().rev().collect::<String>().parse().ok()?;
        match n {
            1..=10 => Some(Group::G1),
            11..=20 => Some(Group::G2),
            21..=30 => Some(Group::G3),
            _ => None,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G1" => Ok(Group::G1),
            "G2" => Ok(Group::G2),
            "G3" => Ok(Group::G3),
            other => Err(Error::Task(format!("unknown group {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub id: String,
    pub group: Group,
    #[serde(default)]
    pub prompt: String,
    pub required_files: BTreeSet<String>,
}

impl TaskSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TaskSpec = serde_json::from_str(text).map_err(|e| Error::Task(e.to_string()))?;
        if spec.required_files.is_empty() {
            return Err(Error::Task(format!("{}: required_files is empty", spec.id)));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_task_file() {
        let t = TaskSpec::from_json(
            r#"{"id":"task_23","group":"G3","prompt":"p","required_files":["app/a.py","app/b.py"]}"#,
        )
        .unwrap();
        assert_eq!(t.group, Group::G3);
        assert_eq!(t.required_files.len(), 2);
    }

    #[test]
    fn rejects_empty_and_bad_group() {
        assert!(TaskSpec::from_json(r#"{"id":"t","group":"G1","prompt":"","required_files":[]}"#).is_err());
        assert!(TaskSpec::from_json(r#"{"id":"t","group":"G4","prompt":"","required_files":["a"]}"#).is_err());
    }

    #[test]
    fn group_from_number() {
        assert_eq!(Group::from_task_id("task_01"), Some(Group::G1));
        assert_eq!(Group::from_task_id("task_10"), Some(Group::G1));
        assert_eq!(Group::from_task_id("task_11"), Some(Group::G2));
        assert_eq!(Group::from_task_id("23"), Some(Group::G3));
        assert_eq!(Group::from_task_id("task_31"), None);
        assert_eq!(Group::from_task_id("task"), None);
    }
}
