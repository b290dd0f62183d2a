use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::extractor::{DefKind, ModuleSyntax};
use crate::path::ModulePath;
use crate::search::tokenize::tokenize;

pub const MODULE_SYMBOL: &str = "<module>";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChunkKind {
    Function,
    Class,
    WholeFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeChunk {
    pub file: ModulePath,
    pub symbol: String,
    pub kind: ChunkKind,
    pub tokens: Vec<String>,
}

impl CodeChunk {
    pub fn length(&self) -> usize {
        self.tokens.len()
    }
}

/// A source file with the facts parsed from it.
pub struct SourceFile<'a> {
    pub path: &'a ModulePath,
    pub text: &'a str,
    pub syntax: &'a ModuleSyntax,
}

/// One chunk per top-level function or class (methods stay inside their
/// class). Files without top-level definitions become a single whole-file
/// chunk. Chunks with no terms are dropped.
pub fn chunk_repository<'a>(files: impl IntoIterator<Item = SourceFile<'a>>) -> Vec<CodeChunk> {
    let mut out = Vec::new();
    for f in files {
        let mut seen: HashMap<&str, usize> = HashMap::new();
        let defs = &f.syntax.definitions;
        if defs.is_empty() {
            let tokens = tokenize(f.text);
            if !tokens.is_empty() {
                out.push(CodeChunk {
                    file: f.path.clone(),
                    symbol: MODULE_SYMBOL.to_string(),
                    kind: ChunkKind::WholeFile,
                    tokens,
                });
            }
            continue;
        }
        for d in defs {
            let tokens = tokenize(&f.text[d.start..d.end]);
            if tokens.is_empty() {
                continue;
            }
            let n = seen.entry(d.name.as_str()).or_insert(0);
            *n += 1;
            let symbol = if *n == 1 {
                d.name.clone()
            } else {
                format!("{}#{}", d.name, n)
            };
            out.push(CodeChunk {
                file: f.path.clone(),
                symbol,
                kind: match d.kind {
                    DefKind::Function => ChunkKind::Function,
                    DefKind::Class => ChunkKind::Class,
                },
                tokens,
            });
        }
    }
    out
}
