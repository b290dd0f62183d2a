//! Exit criteria on the bundled RealWorld corpus (or `REALWORLD_REPO`).
//! Prints one PASS/FAIL line per criterion and exits non-zero on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use codenav_core::graph::{architectural_context, load_graph, render_context, save_graph};
use codenav_core::metrics::{
    compute_acs, compute_fctc, count_mcp_calls, detect_veto_event, files_accessed, parse_transcript, score_trial,
    TaskSpec,
};
use codenav_core::report::{welch_t, GroupStats, Significance};
use codenav_core::toolserver::{ToolServer, INVALID_PARAMS, METHOD_NOT_FOUND, PARSE_ERROR};
use codenav_core::{EdgeKind, ModulePath, RepoIndex};
use common::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use serde_json::Value;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn within(actual: usize, target: usize, rel: f64) -> bool {
    (actual as f64 - target as f64).abs() <= rel * target as f64
}

fn graph_statistics(idx: &RepoIndex, elapsed: Duration) -> Outcome {
    let c = idx.graph.counts();
    let nodes = idx.graph.nodes().len();
    let targets = [
        (EdgeKind::Imports, 201),
        (EdgeKind::Inherits, 20),
        (EdgeKind::Instantiates, 34),
    ];
    let mut off = Vec::new();
    for (kind, target) in targets {
        let got = c.get(kind);
        if !within(got, target, 0.03) {
            let pct = 100.0 * (got as f64 - target as f64) / target as f64;
            off.push(format!("{kind} {got} vs {target} ({pct:+.1}%)"));
        }
    }
    let summary = format!("{} in {:.2}s", idx.graph.summary_line(), elapsed.as_secs_f64());
    let mut problems = off;
    if nodes != 71 {
        problems.push(format!("nodes {nodes} vs 71"));
    }
    if elapsed >= Duration::from_secs(10) {
        problems.push("indexing took 10s or more".into());
    }
    check(
        problems.is_empty(),
        summary.clone(),
        format!("{summary}; {}", problems.join(", ")),
    )
}

fn context_fidelity(idx: &RepoIndex) -> Outcome {
    let base = ModulePath::new("app/db/repositories/base.py").unwrap();
    let ctx = architectural_context(&idx.graph, &base).map_err(|e| e.to_string())?;
    let text = render_context(&ctx);
    let mut expected: BTreeSet<String> = [
        "app/api/dependencies/database.py",
        "app/db/repositories/articles.py",
        "app/db/repositories/comments.py",
        "app/db/repositories/profiles.py",
        "app/db/repositories/tags.py",
        "app/db/repositories/users.py",
    ]
    .iter()
    .map(|p| format!("← [IMPORTS]     {p}"))
    .collect();
    expected.insert("← [INSTANTIATES] app/api/dependencies/database.py".into());
    let inbound: BTreeSet<String> = text
        .lines()
        .filter(|l| l.starts_with('←'))
        .map(str::to_string)
        .collect();
    let total = text.lines().last().unwrap_or_default();
    let extra: Vec<_> = inbound.difference(&expected).cloned().collect();
    let missing: Vec<_> = expected.difference(&inbound).cloned().collect();
    check(
        inbound == expected && total == "Total: 7 structural connections",
        format!("{} inbound lines, {total}", inbound.len()),
        format!("{total}; unexpected {extra:?}; missing {missing:?}"),
    )
}

fn chunk_count(idx: &RepoIndex) -> Outcome {
    let n = idx.chunks().len();
    check(
        within(n, 339, 0.10),
        format!("{n} chunks"),
        format!("{n} chunks vs 339 ± 10%"),
    )
}

fn retrieval_sanity(idx: &RepoIndex) -> Outcome {
    let res = idx.search_index().search("incorrect email or password", 3);
    let top: Vec<String> = res.iter().map(|r| format!("{} {:.3}", r.file, r.score)).collect();
    let first = res.first().map(|r| r.file.as_str()).unwrap_or("(none)");
    check(
        first == "app/resources/strings.py",
        format!("rank 1 {first}"),
        format!("rank 1 is {first}; top 3 {top:?}"),
    )
}

fn statistics_reproduction() -> Outcome {
    let c = GroupStats::new(99.4, 3.6, 31);
    let cases = [
        (GroupStats::new(76.2, 23.6, 29), 5.23),
        (GroupStats::new(78.2, 22.9, 28), 4.83),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (other, target) in cases {
        let start = Instant::now();
        let r = welch_t(&c, &other).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let again = welch_t(&c, &other).map_err(|e| e.to_string())?;
        ok &= (r.t - target).abs() <= 0.05
            && r.significance == Significance::P001
            && r == again
            && elapsed < Duration::from_millis(1);
        notes.push(format!(
            "t={:.3} df={:.1} {} ({:?})",
            r.t, r.df, r.significance, elapsed
        ));
    }
    check(ok, notes.join("; "), notes.join("; "))
}

fn metrics_properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (gen_calls(10), gen_required(), 0..POOL.len());
    runner
        .run(&strategy, |(calls, required, extra)| {
            let t = to_transcript(&calls);
            let mut accessed = files_accessed(&t, PREFIX);
            let fail = |what: &str| Err(TestCaseError::fail(what.to_string()));
            if accessed != oracle_accessed(&calls) {
                return fail("extracted paths");
            }
            let mut twice = calls.clone();
            twice.extend(calls.iter().cloned());
            if files_accessed(&to_transcript(&twice), PREFIX) != accessed {
                return fail("extraction idempotence");
            }
            let acs = compute_acs(&accessed, &required).unwrap();
            if !(0.0..=1.0).contains(&acs) || acs != oracle_acs(&accessed, &required) {
                return fail("acs bounds");
            }
            let fctc = compute_fctc(&t, &required, PREFIX);
            if fctc != oracle_fctc(&calls, &required) {
                return fail("fctc oracle");
            }
            if fctc.is_some() != (acs > 0.0) {
                return fail("fctc/acs consistency");
            }
            if count_mcp_calls(&t) != oracle_mcp(&calls) {
                return fail("mcp count");
            }
            if detect_veto_event(&t, &required) != oracle_veto(&calls, &required) {
                return fail("veto clauses");
            }
            accessed.insert(POOL[extra].to_string());
            if compute_acs(&accessed, &required).unwrap() < acs {
                return fail("acs monotonicity");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let dir = fixtures_dir().join("transcripts");
    let text = std::fs::read_to_string(dir.join("task23_veto.jsonl")).map_err(|e| e.to_string())?;
    let t = parse_transcript(&text, "task23_veto.jsonl").map_err(|e| e.to_string())?;
    let task = TaskSpec::load(&dir.join("task23.json")).map_err(|e| e.to_string())?;
    let m = score_trial(&t, &task, "/workspace/repo").map_err(|e| e.to_string())?;
    let golden = format!(
        "golden acs={} mcp_calls={} veto_event={}",
        m.acs, m.mcp_calls, m.veto_event
    );
    check(
        m.acs == 1.0 && m.mcp_calls == 1 && m.veto_event,
        format!("1000 cases; {golden}"),
        golden,
    )
}

fn protocol_conformance(idx: &RepoIndex) -> Outcome {
    let server = ToolServer::new(idx.graph.clone(), idx.search_index());
    let script = [
        r#"{"jsonrpc":"2.0","id":1,"method":"initialize","params":{"protocolVersion":"2024-11-05","capabilities":{},"clientInfo":{"name":"script","version":"0"}}}"#,
        r#"{"jsonrpc":"2.0","method":"notifications/initialized"}"#,
        r#"{"jsonrpc":"2.0","id":2,"method":"tools/list"}"#,
        r#"{"jsonrpc":"2.0","id":3,"method":"tools/call","params":{"name":"get_architectural_context","arguments":{"file_path":"app/db/repositories/base.py"}}}"#,
        r#"{"jsonrpc":"2.0","id":4,"method":"tools/call","params":{"name":"semantic_search","arguments":{"query":"jwt token"}}}"#,
        r#"{"jsonrpc":"2.0","id":5,"method":"tools/call","params":{"name":"delete_repository","arguments":{}}}"#,
        r#"{"jsonrpc":"2.0","id":6,"method":"tools/call","params":{"name":"semantic_search","arguments":{"query":7}}}"#,
        r#"{"jsonrpc":"2.0","id":7,"method":"tools/call","params":{"name":"get_architectural_context","arguments":{"file_path":"app/nope.py"}}}"#,
        "{\"jsonrpc\":\"2.0\",\"id\":8,\"method\":",
        r#"{"jsonrpc":"2.0","id":9,"method":"ping"}"#,
    ]
    .join("\n");
    let mut out = Vec::new();
    server.serve(script.as_bytes(), &mut out).map_err(|e| e.to_string())?;
    let replies: Vec<Value> = String::from_utf8(out)
        .map_err(|e| e.to_string())?
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let expected_ctx = render_context(
        &architectural_context(&idx.graph, &ModulePath::new("app/db/repositories/base.py").unwrap())
            .map_err(|e| e.to_string())?,
    );
    let text = |v: &Value| {
        v["result"]["content"][0]["text"]
            .as_str()
            .unwrap_or_default()
            .to_string()
    };
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    expect(replies.len() == 9, "nine replies (notification unanswered)");
    if replies.len() == 9 {
        expect(replies[0]["result"]["protocolVersion"] == "2024-11-05", "initialize");
        let tools = replies[1]["result"]["tools"].as_array().cloned().unwrap_or_default();
        let names: Vec<_> = tools.iter().filter_map(|t| t["name"].as_str()).collect();
        expect(
            names == ["get_architectural_context", "semantic_search"],
            "tools/list names",
        );
        expect(
            tools.iter().all(|t| t["inputSchema"]["type"] == "object"),
            "input schemas",
        );
        expect(
            text(&replies[2]) == expected_ctx && replies[2]["result"]["isError"] == false,
            "context call",
        );
        expect(
            text(&replies[3]).starts_with("1. ") && text(&replies[3]).lines().count() <= 8,
            "search call",
        );
        expect(replies[4]["error"]["code"] == METHOD_NOT_FOUND, "unknown tool");
        expect(replies[5]["error"]["code"] == INVALID_PARAMS, "bad argument type");
        expect(
            replies[6]["result"]["isError"] == true && text(&replies[6]) == "file not found in graph: app/nope.py",
            "missing file",
        );
        expect(
            replies[7]["error"]["code"] == PARSE_ERROR && replies[7]["id"].is_null(),
            "malformed line",
        );
        expect(
            replies[8]["id"] == 9 && replies[8]["result"].is_object(),
            "alive after errors",
        );
    }
    check(
        failures.is_empty(),
        format!("{} replies as specified", replies.len()),
        failures.join(", "),
    )
}

fn persistence_round_trip(idx: &RepoIndex) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("graph.json");
    save_graph(&idx.graph, &path).map_err(|e| e.to_string())?;
    let back = load_graph(&path).map_err(|e| e.to_string())?;
    let mut differing = Vec::new();
    for n in idx.graph.nodes() {
        let a = render_context(&architectural_context(&idx.graph, n).map_err(|e| e.to_string())?);
        let b = render_context(&architectural_context(&back, n).map_err(|e| e.to_string())?);
        if a != b {
            differing.push(n.to_string());
        }
    }
    check(
        back == idx.graph && differing.is_empty(),
        format!("{} nodes, {} edges identical", back.nodes().len(), back.edges().len()),
        format!(
            "structural equality {}; differing renders {differing:?}",
            back == idx.graph
        ),
    )
}

fn main() {
    let root = corpus_root();
    println!("corpus: {}", root.display());
    let start = Instant::now();
    let idx = match RepoIndex::build(&root) {
        Ok(idx) => idx,
        Err(e) => {
            println!("FAIL could not index corpus: {e}");
            std::process::exit(1);
        }
    };
    let elapsed = start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 graph statistics", graph_statistics(&idx, elapsed)),
        ("2 context fidelity", context_fidelity(&idx)),
        ("3 chunk count", chunk_count(&idx)),
        ("4 G1 retrieval sanity", retrieval_sanity(&idx)),
        ("5 statistics reproduction", statistics_reproduction()),
        ("6 metrics property suite", metrics_properties()),
        ("7 protocol conformance", protocol_conformance(&idx)),
        ("8 persistence round-trip", persistence_round_trip(&idx)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
