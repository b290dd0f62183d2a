//! Benchmarks for codenav-core live in `benches/`.

use std::path::PathBuf;

/// Bundled corpus, or `REALWORLD_REPO` when set.
pub fn corpus_root() -> PathBuf {
    std::env::var_os("REALWORLD_REPO")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/realworld/repo"))
}

pub fn transcripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/transcripts")
}
