use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;
use wordrep::generators as gens;
use wordrep::io::{graph_to_dot, orientation_to_dot, parse_graph, to_edge_list, to_json};
use wordrep::mu_line::{check_level_clauses, orientation_d, rook_orientation};
use wordrep::search::decide_word_representable;
use wordrep::{
    find_shortcut, Graph, GraphError, Orientation, OrientationError, SearchError, SearchOptions,
    Statement, Verdict, Word, WordError,
};

use crate::suite::{claims_in, Scope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Word-representable graphs and semi-transitive orientations.
#[derive(Debug, Parser)]
#[command(name = "wordrep", version)]
struct Cli {
    /// Print a JSON run report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a named graph.
    Gen(GenArgs),
    /// Line graph of a graph file.
    Line(TransformArgs),
    /// Mycielski graph of a graph file.
    Mycielski(TransformArgs),
    /// Check which graph a word represents, or whether it represents a given one.
    CheckWord(CheckWordArgs),
    /// Evaluate `exists(a,b,c)` or `forall(a,b,c)` on a word read cyclically.
    EvalStmt(EvalStmtArgs),
    /// Decide word-representability by exhaustive orientation search.
    Decide(DecideArgs),
    /// Build the orientation D of L(mu(C_{2n+1})).
    OrientD(OrientDArgs),
    /// Build the rook orientation of L(K_{m,n}).
    Rook(RookArgs),
    /// Run the reproduction suite.
    Verify(VerifyArgs),
    /// Export a graph or an orientation as DOT.
    ExportDot(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    K4Prime,
    W5Prime,
    GraphA,
    /// mu(C_{2n+1}).
    MycielskiCycle,
    /// Line graph of `--base`.
    LineOf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Edges,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Graph format; defaults to JSON, or edge list for a non-`.json` `--out`.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Base family for `line-of`.
    #[arg(long, value_enum)]
    base: Option<Family>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CheckWordArgs {
    /// Whitespace-separated letters.
    #[arg(long)]
    word: String,
    /// Graph the word should represent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalStmtArgs {
    #[arg(long)]
    word: String,
    /// e.g. `exists(a,b,c)`.
    #[arg(long)]
    stmt: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Representable,
    NonRepresentable,
}

#[derive(Debug, Args)]
struct DecideArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Exit 1 unless the verdict matches.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrientFormat {
    Arcs,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct OrientOutput {
    /// Check semi-transitivity and exit 1 if it fails.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value = "arcs")]
    format: OrientFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OrientDArgs {
    #[arg(long)]
    n: usize,
    /// Also evaluate the level-set reachability clauses.
    #[arg(long)]
    report: bool,
    #[command(flatten)]
    output: OrientOutput,
}

#[derive(Debug, Args)]
struct RookArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: OrientOutput,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    scope: Scope,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Graph file to export.
    #[arg(long = "in", conflicts_with_all = ["orient_d", "rook"])]
    input: Option<PathBuf>,
    /// Arc lines (`u -> v`) orienting the `--in` graph.
    #[arg(long, requires = "input")]
    arcs: Option<PathBuf>,
    /// Export D for this n.
    #[arg(long)]
    orient_d: Option<usize>,
    /// Export the rook orientation of L(K_{m,n}), given as `m,n`.
    #[arg(long, value_delimiter = ',')]
    rook: Option<Vec<usize>>,
    #[arg(long, default_value = "G")]
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Guard(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::ScaleGuard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OrientationError> for CliError {
    fn from(e: OrientationError) -> Self {
        match e {
            OrientationError::ScaleGuard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::ScaleGuard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// What a command produced: text for stdout, a JSON body for `--json`, and
/// the exit status.
struct Done {
    text: String,
    body: Value,
    code: i32,
}

impl Done {
    fn ok(text: String, body: Value) -> Done {
        Done {
            text,
            body,
            code: EXIT_OK,
        }
    }
}

fn guard_override() -> bool {
    std::env::var("WORDREP_GUARD_OVERRIDE").is_ok_and(|v| v == "1")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn need(v: Option<usize>, flag: &str, family: Family) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("family {family:?} needs --{flag}")))
}

fn family_graph(
    family: Family,
    n: Option<usize>,
    m: Option<usize>,
    base: Option<Family>,
) -> Result<Graph, CliError> {
    Ok(match family {
        Family::Cycle => gens::cycle(need(n, "n", family)?)?,
        Family::Path => gens::path(need(n, "n", family)?)?,
        Family::Complete => gens::complete(need(n, "n", family)?)?,
        Family::CompleteBipartite => {
            gens::complete_bipartite(need(m, "m", family)?, need(n, "n", family)?)?
        }
        Family::K4Prime => gens::k4_prime(),
        Family::W5Prime => gens::w5_prime(),
        Family::GraphA => gens::graph_a(),
        Family::MycielskiCycle => {
            let n = need(n, "n", family)?;
            if n == 0 {
                return Err(CliError::Usage("mycielski-cycle needs --n >= 1".into()));
            }
            gens::mycielski(&gens::cycle(2 * n + 1)?)?
        }
        Family::LineOf => {
            let base = base.ok_or_else(|| CliError::Usage("line-of needs --base".into()))?;
            if matches!(base, Family::LineOf) {
                return Err(CliError::Usage(
                    "nest line graphs with the `line` command".into(),
                ));
            }
            gens::line_graph(&family_graph(base, n, m, None)?)?
        }
    })
}

fn emit_graph(g: &Graph, output: &Output) -> Result<Done, CliError> {
    let format = output.format.unwrap_or(match &output.out {
        Some(p) if p.extension().is_none_or(|e| e != "json") => Format::Edges,
        _ => Format::Json,
    });
    let mut text = match format {
        Format::Json => to_json(g),
        Format::Edges => to_edge_list(g),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let body = json!({"vertices": g.vertex_count(), "edges": g.edge_count()});
    match &output.out {
        Some(p) => {
            write_out(p, &text)?;
            Ok(Done::ok(
                format!(
                    "wrote {} ({} vertices, {} edges)\n",
                    p.display(),
                    g.vertex_count(),
                    g.edge_count()
                ),
                body,
            ))
        }
        None => Ok(Done::ok(text, body)),
    }
}

fn emit_orientation(
    d: &Orientation,
    output: &OrientOutput,
    name: &str,
    mut extra: String,
    mut body: Value,
) -> Result<Done, CliError> {
    let text = match output.format {
        OrientFormat::Arcs => d.to_arc_lines(),
        OrientFormat::Dot => orientation_to_dot(d, name),
        OrientFormat::Json => {
            let arcs: Vec<[&str; 2]> = d.arc_labels().map(|(u, v)| [u, v]).collect();
            serde_json::to_string_pretty(&json!({"vertices": d.base().labels(), "arcs": arcs}))
                .expect("serializable")
                + "\n"
        }
    };
    body["arcs"] = json!(d.arc_count());
    let mut code = EXIT_OK;
    if output.verify {
        let acyclic = d.is_acyclic();
        let shortcut = if acyclic { find_shortcut(d)? } else { None };
        let ok = acyclic && shortcut.is_none();
        let _ = writeln!(extra, "acyclic: {acyclic}");
        if let Some(w) = &shortcut {
            let _ = writeln!(extra, "shortcut: {w}");
        }
        let _ = writeln!(extra, "semi-transitive: {ok}");
        body["semi_transitive"] = json!(ok);
        if !ok {
            code = EXIT_REFUTED;
        }
    }
    let mut out = match &output.out {
        Some(p) => {
            write_out(p, &text)?;
            format!("wrote {}\n", p.display())
        }
        None => text,
    };
    out.push_str(&extra);
    Ok(Done {
        text: out,
        body,
        code,
    })
}

fn run_command(cmd: Command) -> Result<Done, CliError> {
    match cmd {
        Command::Gen(a) => {
            let g = family_graph(a.family, a.n, a.m, a.base)?;
            emit_graph(&g, &a.output)
        }
        Command::Line(a) => emit_graph(&gens::line_graph(&read_graph(&a.input)?)?, &a.output),
        Command::Mycielski(a) => emit_graph(&gens::mycielski(&read_graph(&a.input)?)?, &a.output),
        Command::CheckWord(a) => check_word(a),
        Command::EvalStmt(a) => {
            let w = Word::parse(&a.word)?.as_cyclic();
            let s: Statement = a.stmt.parse()?;
            let v = w.eval(&s)?;
            Ok(Done::ok(
                format!("{s}: {v}\n"),
                json!({"statement": s.to_string(), "value": v}),
            ))
        }
        Command::Decide(a) => decide(a),
        Command::OrientD(a) => {
            if a.n < 2 {
                return Err(CliError::Usage("orient-d needs --n >= 2".into()));
            }
            let d = orientation_d(a.n)?;
            let mut extra = String::new();
            let mut body = json!({"n": a.n});
            let mut refuted = false;
            if a.report {
                let r = check_level_clauses(a.n)?;
                extra.push_str(&serde_json::to_string_pretty(&r).expect("serializable"));
                extra.push('\n');
                body["report"] = serde_json::to_value(&r).expect("serializable");
                refuted = !r.all_hold();
            }
            let mut done = emit_orientation(&d, &a.output, &format!("D{}", a.n), extra, body)?;
            if refuted {
                done.code = EXIT_REFUTED;
            }
            Ok(done)
        }
        Command::Rook(a) => {
            let d = rook_orientation(a.m, a.n)?;
            emit_orientation(
                &d,
                &a.output,
                "rook",
                String::new(),
                json!({"m": a.m, "n": a.n}),
            )
        }
        Command::Verify(a) => verify(a),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn check_word(a: CheckWordArgs) -> Result<Done, CliError> {
    let w = Word::parse(&a.word)?;
    let uniformity = w.uniformity();
    let mut text = format!(
        "uniform: {}\n",
        uniformity.map_or("no".to_string(), |k| format!("{k}-uniform"))
    );
    let mut body = json!({"word": w.to_string(), "uniformity": uniformity});
    match a.input {
        Some(path) => {
            let g = read_graph(&path)?;
            let ok = w.represents(&g)?;
            let _ = writeln!(text, "represents {}: {ok}", path.display());
            body["represents"] = json!(ok);
            Ok(Done {
                text,
                body,
                code: if ok { EXIT_OK } else { EXIT_REFUTED },
            })
        }
        None => {
            let mut alphabet: Vec<&str> = w.letters().iter().map(String::as_str).collect();
            alphabet.sort_unstable();
            alphabet.dedup();
            let g = w.represented_graph(&alphabet)?;
            text.push_str(&to_edge_list(&g));
            body["graph"] = serde_json::from_str(&to_json(&g)).expect("valid JSON");
            Ok(Done::ok(text, body))
        }
    }
}

fn decide(a: DecideArgs) -> Result<Done, CliError> {
    let g = read_graph(&a.input)?;
    let opts = SearchOptions {
        workers: a.workers.max(1),
        guard_override: guard_override(),
    };
    let cert = decide_word_representable(&g, &opts)?;
    if !cert.verify() {
        unreachable!("certificates are verified at construction");
    }
    let verdict = cert.verdict();
    let mut text = format!("verdict: {verdict}\n");
    match (&cert.witness(), &cert.exhaustion()) {
        (Some(w), _) => {
            text.push_str("witness:\n");
            text.push_str(&w.to_arc_lines());
        }
        (None, Some(e)) => {
            let _ = writeln!(text, "branches explored: {}", e.branches_explored);
            let _ = writeln!(
                text,
                "per worker: {}",
                e.per_worker
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let _ = writeln!(text, "symmetry: {}", e.symmetry_note);
        }
        (None, None) => {}
    }
    let expected = a.expect.map(|e| match e {
        Expect::Representable => Verdict::Representable,
        Expect::NonRepresentable => Verdict::NonRepresentable,
    });
    let code = match expected {
        Some(v) if v != verdict => {
            let _ = writeln!(text, "expected {v}, got {verdict}");
            EXIT_REFUTED
        }
        _ => EXIT_OK,
    };
    let body = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "certificate": serde_json::to_value(&cert).expect("serializable"),
    });
    Ok(Done { text, body, code })
}

fn verify(a: VerifyArgs) -> Result<Done, CliError> {
    let opts = SearchOptions {
        workers: a.workers.max(1),
        guard_override: guard_override(),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all = true;
    for claim in claims_in(a.scope) {
        let r = claim.run(&opts);
        eprintln!(
            "{} {:.3}s (budget {}s)",
            r.id,
            r.elapsed.as_secs_f64(),
            r.budget.as_secs()
        );
        let mut line = r.line();
        if !r.within_budget {
            line.push_str(" [over time budget]");
        }
        text.push_str(&line);
        text.push('\n');
        all &= r.ok();
        results.push(json!({
            "id": r.id,
            "claim": r.description,
            "pass": r.passed,
            "within_budget": r.within_budget,
            "detail": r.detail,
        }));
    }
    let body = json!({"claims": results, "all_pass": all});
    Ok(Done {
        text,
        body,
        code: if all { EXIT_OK } else { EXIT_REFUTED },
    })
}

fn export_dot(a: ExportArgs) -> Result<Done, CliError> {
    let dot = match (&a.input, a.orient_d, &a.rook) {
        (Some(path), None, None) => {
            let g = read_graph(path)?;
            match &a.arcs {
                Some(arcs) => {
                    orientation_to_dot(&Orientation::parse_arc_lines(g, &read(arcs)?)?, &a.name)
                }
                None => graph_to_dot(&g, &a.name),
            }
        }
        (None, Some(n), None) => {
            if n < 2 {
                return Err(CliError::Usage("--orient-d needs n >= 2".into()));
            }
            orientation_to_dot(&orientation_d(n)?, &a.name)
        }
        (None, None, Some(mn)) if mn.len() == 2 => {
            orientation_to_dot(&rook_orientation(mn[0], mn[1])?, &a.name)
        }
        _ => {
            return Err(CliError::Usage(
                "export-dot needs exactly one of --in, --orient-d, --rook".into(),
            ))
        }
    };
    match &a.out {
        Some(p) => {
            write_out(p, &dot)?;
            Ok(Done::ok(
                format!("wrote {}\n", p.display()),
                json!({"out": p}),
            ))
        }
        None => Ok(Done::ok(dot, json!({}))),
    }
}

/// Runs one invocation and returns its exit status. Plain output goes to
/// stdout, diagnostics and timing to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let json_mode = cli.json;
    let start = Instant::now();
    let result = run_command(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(done) => {
            if json_mode {
                let report =
                    json!({"command": command, "result": done.body, "exit_status": done.code});
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                let _ = stdout.write_all(done.text.as_bytes());
            }
            done.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if json_mode {
                let report =
                    json!({"command": command, "error": e.to_string(), "exit_status": e.code()});
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            }
            e.code()
        }
    }
}
