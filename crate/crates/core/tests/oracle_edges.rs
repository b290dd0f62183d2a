//! Edge list of the bundled corpus, frozen from tests/oracle/edges.py
//! (Python `ast`, written separately from the Rust extractor).

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use codenav_core::RepoIndex;

#[test]
fn extractor_matches_python_oracle() {
    if std::env::var_os("REALWORLD_REPO").is_some() {
        return;
    }
    let frozen =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/realworld_edges.txt"))
            .unwrap();
    let expected: BTreeSet<String> = frozen.lines().filter(|l| !l.is_empty()).map(str::to_string).collect();
    let idx = RepoIndex::build(&common::corpus_root()).unwrap();
    let actual: BTreeSet<String> = idx
        .graph
        .edges()
        .iter()
        .map(|e| format!("{} {} {}", e.kind, e.source, e.target))
        .collect();
    let missing: Vec<_> = expected.difference(&actual).collect();
    let extra: Vec<_> = actual.difference(&expected).collect();
    assert!(
        missing.is_empty() && extra.is_empty(),
        "missing {missing:#?}\nextra {extra:#?}"
    );
    assert!(idx.parse_errors.is_empty());
}
