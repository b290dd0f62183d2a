use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use codenav_core::graph::{architectural_context, load_graph, render_context, save_graph};
use codenav_core::metrics::{parse_transcript, score_trial, Group, TaskSpec};
use codenav_core::report::{load_results, render_report, Comparison};
use codenav_core::search::{render_bm25_preamble, render_results, DEFAULT_TOP_N, PREAMBLE_SIZE};
use codenav_core::toolserver::ToolServer;
use codenav_core::{Error, ModulePath, RepoIndex};

const EXIT_INPUT: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;
const EXIT_EMPTY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "codenav",
    version,
    about = "Dependency graph, search and transcript scoring for Python repositories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the dependency graph of a repository and write it to a file.
    Index {
        #[arg(long)]
        repo: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the 1-hop structural neighborhood of one file.
    #[command(alias = "query")]
    Context {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        file: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank files by BM25 relevance to a query.
    Search {
        #[arg(long)]
        repo: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = DEFAULT_TOP_N, value_parser = clap::value_parser!(usize))]
        top_n: usize,
        /// Print the ten-file prompt preamble instead of a plain ranking.
        #[arg(long)]
        preamble: bool,
    },
    /// Serve both navigation tools as JSON-RPC over stdin/stdout.
    Serve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        repo: PathBuf,
    },
    /// Score one agent transcript against a task's required files.
    Score {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        task: PathBuf,
        /// Absolute repo path the agent saw, stripped from file paths.
        #[arg(long)]
        repo_prefix: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Summarize a directory of trial result files.
    Report {
        #[arg(long)]
        results: PathBuf,
        /// Welch comparison as TREATMENT:BASELINE, e.g. C:A. Repeatable.
        #[arg(long = "ttest", value_parser = parse_pair)]
        ttests: Vec<(String, String)>,
        /// Restrict requested t-tests to one task group.
        #[arg(long)]
        group: Option<Group>,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(':') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains(':') => Ok((a.into(), b.into())),
        _ => Err(format!("expected TREATMENT:BASELINE, got {s:?}")),
    }
}

/// Failure carrying its process exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn exit(code: u8, message: impl Into<String>) -> anyhow::Error {
    Exit {
        code,
        message: message.into(),
    }
    .into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Exit>() {
            return e.code;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::FileNotInGraph(_) => EXIT_NOT_FOUND,
                Error::EmptyTranscript(_) => EXIT_EMPTY,
                _ => EXIT_INPUT,
            };
        }
    }
    EXIT_INPUT
}

fn index_repo(repo: &Path) -> anyhow::Result<RepoIndex> {
    if !repo.is_dir() {
        bail!("repository {} is not a readable directory", repo.display());
    }
    let idx = RepoIndex::build(repo).with_context(|| format!("indexing {}", repo.display()))?;
    for e in &idx.parse_errors {
        eprintln!("warning: {e}");
    }
    Ok(idx)
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli, w: &mut impl Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Index { repo, out } => {
            let idx = index_repo(&repo)?;
            save_graph(&idx.graph, &out)?;
            writeln!(w, "{}", idx.graph.summary_line())?;
        }
        Command::Context { graph, file, format } => {
            let graph = load_graph(&graph)?;
            let path = ModulePath::new(&file).map_err(|_| Error::FileNotInGraph(file.clone()))?;
            let ctx = architectural_context(&graph, &path)?;
            match format {
                Format::Text => w.write_all(render_context(&ctx).as_bytes())?,
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&ctx)?)?,
            }
        }
        Command::Search {
            repo,
            query,
            top_n,
            preamble,
        } => {
            if top_n == 0 {
                bail!("--top-n must be at least 1");
            }
            let index = index_repo(&repo)?.search_index();
            if preamble {
                writeln!(w, "{}", render_bm25_preamble(&index.search(&query, PREAMBLE_SIZE)))?;
            } else {
                writeln!(w, "{}", render_results(&index.search(&query, top_n)))?;
            }
        }
        Command::Serve { graph, repo } => {
            let graph = load_graph(&graph)?;
            let search = index_repo(&repo)?.search_index();
            let server = ToolServer::new(graph, search);
            server.serve(io::stdin().lock(), &mut *w)?;
        }
        Command::Score {
            transcript,
            task,
            repo_prefix,
            format,
        } => {
            let spec = TaskSpec::load(&task)?;
            let text = std::fs::read(&transcript).with_context(|| format!("reading {}", transcript.display()))?;
            let t = parse_transcript(&String::from_utf8_lossy(&text), &transcript.display().to_string())?;
            if t.warnings > 0 {
                eprintln!("warning: skipped {} malformed transcript line(s)", t.warnings);
            }
            let m = score_trial(&t, &spec, &repo_prefix)?;
            match format {
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&m)?)?,
                Format::Text => {
                    writeln!(w, "task: {} ({})", spec.id, spec.group)?;
                    writeln!(w, "acs: {:.3}", m.acs)?;
                    writeln!(
                        w,
                        "fctc: {}",
                        m.fctc.map(|f| f.to_string()).unwrap_or_else(|| "-".into())
                    )?;
                    writeln!(w, "mcp_calls: {}", m.mcp_calls)?;
                    writeln!(w, "veto_event: {}", m.veto_event)?;
                    writeln!(w, "files_accessed: {}", m.files_accessed.len())?;
                    for f in &m.files_accessed {
                        let mark = if spec.required_files.contains(f) { "*" } else { " " };
                        writeln!(w, "  {mark} {f}")?;
                    }
                }
            }
        }
        Command::Report { results, ttests, group } => {
            if !results.is_dir() {
                bail!("results directory {} is not readable", results.display());
            }
            let trials = load_results(&results)?;
            if trials.is_empty() {
                return Err(exit(EXIT_EMPTY, format!("no trial files in {}", results.display())));
            }
            let comparisons: Vec<Comparison> = ttests
                .into_iter()
                .map(|(treatment, baseline)| Comparison {
                    treatment,
                    baseline,
                    group,
                })
                .collect();
            w.write_all(render_report(&trials, &comparisons).as_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
