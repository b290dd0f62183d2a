use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Repo-relative path of a source file, `/`-separated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ModulePath(String);

impl ModulePath {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if is_valid(&value) {
            Ok(ModulePath(value))
        } else {
            Err(Error::InvalidPath(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Directory part, `""` for files at the repo root.
    pub fn dir(&self) -> &str {
        match self.0.rfind('/') {
            Some(i) => &self.0[..i],
            None => "",
        }
    }

    pub fn file_name(&self) -> &str {
        match self.0.rfind('/') {
            Some(i) => &self.0[i + 1..],
            None => &self.0,
        }
    }
}

fn is_valid(value: &str) -> bool {
    if !value.ends_with(".py") || value.starts_with('/') || value.contains('\\') {
        return false;
    }
    value.split('/').all(|seg| !seg.is_empty() && seg != "." && seg != "..")
}

impl fmt::Display for ModulePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ModulePath {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ModulePath {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        ModulePath::new(value)
    }
}

impl TryFrom<&str> for ModulePath {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        ModulePath::new(value)
    }
}

impl From<ModulePath> for String {
    fn from(p: ModulePath) -> String {
        p.0
    }
}
