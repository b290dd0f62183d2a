use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extractor::{discover_files, extract_edges, parse_source, ClassRegistry, ModuleSyntax};
use crate::graph::{build_graph, CodeGraph};
use crate::path::ModulePath;
use crate::search::{chunk_repository, CodeChunk, SearchIndex, SourceFile};

/// Everything derived from one repository snapshot.
pub struct RepoIndex {
    pub root: PathBuf,
    pub files: Vec<ModulePath>,
    pub sources: Vec<String>,
    pub syntaxes: Vec<ModuleSyntax>,
    /// Files that failed to parse; they stay in the graph with no outbound facts.
    pub parse_errors: Vec<Error>,
    pub graph: CodeGraph,
}

impl RepoIndex {
    pub fn build(root: &Path) -> Result<Self> {
        let files = discover_files(root)?;
        let sources = files
            .par_iter()
            .map(|f| {
                let p = root.join(f.as_str());
                fs::read(&p)
                    .map(|b| String::from_utf8_lossy(&b).into_owned())
                    .map_err(|e| Error::io(p, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_sources(root, files, sources))
    }

    /// Index in-memory sources; `files` and `sources` are parallel.
    pub fn from_sources(root: &Path, files: Vec<ModulePath>, sources: Vec<String>) -> Self {
        let parsed: Vec<Result<ModuleSyntax>> = files
            .par_iter()
            .zip(sources.par_iter())
            .map(|(f, src)| parse_source(src.strip_prefix('\u{feff}').unwrap_or(src), f))
            .collect();
        let mut syntaxes = Vec::with_capacity(files.len());
        let mut parse_errors = Vec::new();
        for (f, r) in files.iter().zip(parsed) {
            match r {
                Ok(s) => syntaxes.push(s),
                Err(e) => {
                    parse_errors.push(e);
                    syntaxes.push(ModuleSyntax::empty(f.clone()));
                }
            }
        }
        let registry = ClassRegistry::build(&files, &syntaxes);
        let edges: Vec<_> = syntaxes
            .par_iter()
            .flat_map_iter(|s| extract_edges(s, &registry))
            .collect();
        let graph = build_graph(files.iter().cloned(), edges).expect("extracted edges stay inside the file set");
        RepoIndex {
            root: root.to_path_buf(),
            files,
            sources,
            syntaxes,
            parse_errors,
            graph,
        }
    }

    pub fn chunks(&self) -> Vec<CodeChunk> {
        chunk_repository(
            self.files
                .iter()
                .zip(&self.sources)
                .zip(&self.syntaxes)
                .map(|((path, text), syntax)| SourceFile {
                    path,
                    text: text.strip_prefix('\u{feff}').unwrap_or(text),
                    syntax,
                }),
        )
    }

    pub fn search_index(&self) -> SearchIndex {
        SearchIndex::build(self.chunks())
    }
}
