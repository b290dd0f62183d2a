//! Indexing, query and statistics throughput on the bundled corpus.

use std::hint::black_box;

use codenav_bench::{corpus_root, transcripts_dir};
use codenav_core::graph::{architectural_context, graph_from_json, graph_to_json, render_context};
use codenav_core::metrics::{parse_transcript, score_trial, TaskSpec};
use codenav_core::report::{welch_t, GroupStats};
use codenav_core::{ModulePath, RepoIndex};
use criterion::{criterion_group, criterion_main, Criterion};

fn indexing(c: &mut Criterion) {
    let root = corpus_root();
    let mut g = c.benchmark_group("index");
    g.sample_size(20);
    g.bench_function("build_graph", |b| {
        b.iter(|| RepoIndex::build(black_box(&root)).unwrap())
    });
    let idx = RepoIndex::build(&root).unwrap();
    g.bench_function("build_bm25", |b| b.iter(|| idx.search_index()));
    let json = graph_to_json(&idx.graph);
    g.bench_function("load_graph_json", |b| {
        b.iter(|| graph_from_json(black_box(&json)).unwrap())
    });
    g.finish();
}

fn queries(c: &mut Criterion) {
    let idx = RepoIndex::build(&corpus_root()).unwrap();
    let search = idx.search_index();
    let base = ModulePath::new("app/db/repositories/base.py").unwrap();
    c.bench_function("context/base.py", |b| {
        b.iter(|| render_context(&architectural_context(&idx.graph, black_box(&base)).unwrap()))
    });
    c.bench_function("search/top8", |b| {
        b.iter(|| search.search(black_box("incorrect email or password"), 8))
    });
}

fn metrics(c: &mut Criterion) {
    let dir = transcripts_dir();
    let text = std::fs::read_to_string(dir.join("task23_veto.jsonl")).unwrap();
    let task = TaskSpec::load(&dir.join("task23.json")).unwrap();
    c.bench_function("score/task23", |b| {
        b.iter(|| {
            let t = parse_transcript(black_box(&text), "t").unwrap();
            score_trial(&t, &task, "/workspace/repo").unwrap()
        })
    });
    let a = GroupStats::new(99.4, 3.6, 31);
    let b = GroupStats::new(76.2, 23.6, 29);
    c.bench_function("welch_t", |bn| {
        bn.iter(|| welch_t(black_box(&a), black_box(&b)).unwrap())
    });
}

criterion_group!(benches, indexing, queries, metrics);
criterion_main!(benches);
