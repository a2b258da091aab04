//! `genramsey`: construct, verify and search generalized Ramsey colorings.
//!
//! Every command prints a JSON report (or `key: value` lines with `--plain`)
//! and exits with 0 (ok), 1 (violation found), 2 (failure or inconclusive)
//! or 64 (usage error).

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use genramsey::bounds::{self, format_rational, parse_rational};
use genramsey::construct::{self, DesignMode};
use genramsey::io;
use genramsey::matcher;
use genramsey::repeat::{self, PaddingRule, RepeatBuildPolicy};
use genramsey::search::{self, SearchOutcome, SearchResult, Witness};
use genramsey::verify::{self, SkStrategy};
use genramsey::{BlockDesign, EdgeColoring, Error, MultiHypergraph, Verdict};
use serde::Serialize;
use serde_json::{Map, Value};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_FAILURE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "genramsey", version, about = "Generalized Ramsey colorings and their extremal hypergraphs")]
struct Cli {
    /// Print `key: value` lines instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    /// Worker threads for parallel verification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Check colorings and hypergraphs against their defining conditions.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Build repeat hypergraphs from colorings.
    #[command(subcommand)]
    Repeat(RepeatCmd),
    /// Build explicit colorings.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Build or validate K4 packings.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Exact extremal values at small n.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Configuration-avoiding colorings at the linear threshold.
    #[command(subcommand)]
    Match(MatchCmd),
    /// Thresholds, coefficients and the pair-census certificate.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Normalize files.
    #[command(subcommand)]
    Fmt(FmtCmd),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum VerifyCmd {
    /// Is the coloring a (p,q)-coloring?
    Coloring {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Is the hypergraph (s,k)-free, or in the restricted family for ell?
    Hypergraph {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, requires = "k", conflicts_with = "ell")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "s")]
        ell: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum RepeatMode {
    Quadratic,
    Linear,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum RepeatCmd {
    Build {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_enum, default_value = "quadratic")]
        mode: RepeatMode,
        /// Pad 3-vertex unions to 4-sets (quadratic mode only).
        #[arg(long)]
        padded: bool,
        /// Also compare repeats with induced edges on every vertex subset.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum ConstructCmd {
    /// A (6,14)-coloring from a K4 packing.
    Six14 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A (2ell, q_quad(2ell))-coloring from a hypergraph in the restricted family.
    Quad {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum DesignSource {
    Exact,
    Greedy,
    File,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum DesignCmd {
    Make {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: DesignSource,
        /// Hypergraph file to validate (with `--mode file`).
        #[arg(long, required_if_eq("mode", "file"))]
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Serialize)]
struct SearchOpts {
    /// Node budget; exhausting it makes the result inconclusive.
    #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
    budget: u64,
    /// Write the witness to this file.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct FreeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[command(flatten)]
    #[serde(flatten)]
    opts: SearchOpts,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum SearchCmd {
    /// Minimum palette of a (p,q)-coloring of K_n.
    #[command(name = "f")]
    F {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        #[serde(flatten)]
        opts: SearchOpts,
    },
    /// Maximum (s,k)-free simple r-uniform hypergraph.
    #[command(name = "F")]
    Simple(FreeArgs),
    /// Maximum (s,k)-free r-uniform multi-hypergraph.
    #[command(name = "G")]
    Multi(FreeArgs),
    /// Maximum hypergraph in the restricted 4-uniform family.
    #[command(name = "H4")]
    H4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        #[serde(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum MatchCmd {
    Lin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Palette size.
        #[arg(long)]
        colors: usize,
        #[arg(long, required = true)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        restarts: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum BoundsCmd {
    Table {
        #[arg(long)]
        p: usize,
    },
    /// 1/2 - x for x = lim F4(n; p, p/2 - 1)/n^2, given as `a/b`.
    QuadLimit {
        #[arg(long = "F", value_name = "a/b")]
        f: String,
    },
    CertifyH4 {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum FileKind {
    Auto,
    Coloring,
    Hypergraph,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum FmtCmd {
    /// Parse a file and print its canonical form.
    Roundtrip {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        kind: FileKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Outcome {
    Ok,
    Violation,
    Failure,
    Inconclusive,
}

impl Outcome {
    fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => EXIT_OK,
            Outcome::Violation => EXIT_VIOLATION,
            Outcome::Failure | Outcome::Inconclusive => EXIT_FAILURE,
        }
    }
}

#[derive(Serialize, Debug)]
struct RunReport {
    schema: u32,
    command: String,
    parameters: Value,
    outcome: Outcome,
    payload: Value,
    statistics: Value,
    seed: Option<u64>,
}

struct Run {
    outcome: Outcome,
    payload: Map<String, Value>,
    statistics: Map<String, Value>,
}

impl Run {
    fn new(outcome: Outcome) -> Self {
        Run {
            outcome,
            payload: Map::new(),
            statistics: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.payload.insert(key.into(), serde_json::to_value(value).expect("payload serializes"));
        self
    }

    fn stat(mut self, key: &str, value: impl Serialize) -> Self {
        self.statistics.insert(key.into(), serde_json::to_value(value).expect("statistics serialize"));
        self
    }

    fn verdict(verdict: Verdict) -> Self {
        match verdict {
            Verdict::Ok => Run::new(Outcome::Ok),
            Verdict::Violation(w) => Run::new(Outcome::Violation).with("witness", w),
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify(VerifyCmd::Coloring { .. }) => "verify coloring",
        Command::Verify(VerifyCmd::Hypergraph { .. }) => "verify hypergraph",
        Command::Repeat(_) => "repeat build",
        Command::Construct(ConstructCmd::Six14 { .. }) => "construct six14",
        Command::Construct(ConstructCmd::Quad { .. }) => "construct quad",
        Command::Design(_) => "design make",
        Command::Search(SearchCmd::F { .. }) => "search f",
        Command::Search(SearchCmd::Simple(_)) => "search F",
        Command::Search(SearchCmd::Multi(_)) => "search G",
        Command::Search(SearchCmd::H4 { .. }) => "search H4",
        Command::Match(_) => "match lin",
        Command::Bounds(BoundsCmd::Table { .. }) => "bounds table",
        Command::Bounds(BoundsCmd::QuadLimit { .. }) => "bounds quad-limit",
        Command::Bounds(BoundsCmd::CertifyH4 { .. }) => "bounds certify-h4",
        Command::Fmt(_) => "fmt roundtrip",
    }
}

fn parameters(cmd: &Command) -> Value {
    serde_json::to_value(cmd).expect("parameters serialize")
}

/// Writes `text` to `out` if given, else embeds it in the payload.
fn deliver(run: Run, key: &str, text: String, out: Option<&Path>) -> anyhow::Result<Run> {
    Ok(match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            run.with(&format!("{key}_path"), path.display().to_string())
        }
        None => run.with(key, text),
    })
}

fn load_coloring(path: &Path) -> anyhow::Result<EdgeColoring> {
    io::read_coloring(path).with_context(|| format!("reading coloring {}", path.display()))
}

fn load_hypergraph(path: &Path) -> anyhow::Result<MultiHypergraph> {
    io::read_hypergraph(path).with_context(|| format!("reading hypergraph {}", path.display()))
}

fn search_run(result: SearchResult, opts: &SearchOpts) -> anyhow::Result<Run> {
    let outcome = match result.outcome {
        SearchOutcome::Exact => Outcome::Ok,
        SearchOutcome::Inconclusive => Outcome::Inconclusive,
    };
    let mut run = Run::new(outcome)
        .with("value", result.value)
        .with("exact", result.is_exact())
        .with("notes", &result.notes)
        .stat("nodes_explored", result.stats.nodes_explored)
        .stat("elapsed_seconds", result.stats.elapsed.as_secs_f64());
    if let Some(w) = &result.witness {
        let text = match w {
            Witness::Coloring(c) => io::write_coloring(c),
            Witness::Hypergraph(h) => io::write_hypergraph(h),
        };
        run = deliver(run, "witness", text, opts.emit_witness.as_deref())?;
    }
    Ok(run)
}

fn execute(cmd: &Command) -> anyhow::Result<Run> {
    let start = Instant::now();
    let run = match cmd {
        Command::Verify(VerifyCmd::Coloring { file, p, q }) => {
            let c = load_coloring(file)?;
            Run::verdict(verify::check_pq_coloring_par(&c, *p, *q)?)
                .with("n", c.n())
                .with("palette_size", c.palette_size())
        }
        Command::Verify(VerifyCmd::Hypergraph { file, s, k, ell }) => {
            let h = load_hypergraph(file)?;
            let verdict = match (s, k, ell) {
                (Some(s), Some(k), _) => verify::check_sk_free_with(&h, *s, *k, SkStrategy::Auto)?,
                (_, _, Some(ell)) => verify::check_defh_properties(&h, *ell)?,
                _ => bail!("give either --s and --k, or --ell"),
            };
            Run::verdict(verdict).with("n", h.n()).with("edges", h.total_edges())
        }
        Command::Repeat(RepeatCmd::Build {
            coloring,
            mode,
            padded,
            check,
            out,
        }) => {
            let c = load_coloring(coloring)?;
            let padding = if *padded { PaddingRule::Padded } else { PaddingRule::Strict };
            let h = match mode {
                RepeatMode::Quadratic => repeat::build_repeat_quadratic(
                    &c,
                    &RepeatBuildPolicy {
                        padding,
                        ..Default::default()
                    },
                )?,
                RepeatMode::Linear if *padded => bail!("--padded applies to quadratic mode only"),
                RepeatMode::Linear => repeat::build_repeat_linear(&c)?,
            };
            let run = if *check && *mode == RepeatMode::Quadratic {
                Run::verdict(repeat::check_faithfulness(&c, &h, padding)?)
            } else {
                Run::new(Outcome::Ok)
            };
            let run = run.with("edges", h.total_edges());
            deliver(run, "hypergraph", io::write_hypergraph(&h), out.as_deref())?
        }
        Command::Construct(ConstructCmd::Six14 { n, out }) => {
            let built = construct::coloring_614(*n)?;
            let structure = verify::six14_structure(&built.coloring)?;
            let run = Run::new(Outcome::Ok)
                .with("n", n)
                .with("palette_size", built.coloring.palette_size())
                .with("route", built.route)
                .with("blocks", built.design.blocks().len())
                .with("structure", structure);
            deliver(run, "coloring", io::write_coloring(&built.coloring), out.as_deref())?
        }
        Command::Construct(ConstructCmd::Quad { hypergraph, ell, out }) => {
            let h = load_hypergraph(hypergraph)?;
            let c = construct::quad_coloring_from_hypergraph(&h, *ell)?;
            let run = Run::new(Outcome::Ok)
                .with("n", h.n())
                .with("edges", h.total_edges())
                .with("palette_size", c.palette_size())
                .with("p", 2 * ell)
                .with("q", bounds::q_quad(2 * ell));
            deliver(run, "coloring", io::write_coloring(&c), out.as_deref())?
        }
        Command::Design(DesignCmd::Make { n, mode, file, out }) => {
            let design = match (mode, n, file) {
                (DesignSource::File, _, Some(f)) => BlockDesign::from_hypergraph(&load_hypergraph(f)?)?,
                (DesignSource::Exact, Some(n), _) => construct::make_design(*n, DesignMode::Exact)?,
                (DesignSource::Greedy, Some(n), _) => construct::make_design(*n, DesignMode::Greedy)?,
                _ => return Err(Error::ParamOutOfRange("--n is required for exact and greedy designs".into()).into()),
            };
            if let (Some(n), DesignSource::File) = (n, mode) {
                if *n != design.n() {
                    return Err(Error::ParamOutOfRange(format!("file has n = {}, not {n}", design.n())).into());
                }
            }
            let run = Run::new(Outcome::Ok)
                .with("n", design.n())
                .with("blocks", design.blocks().len())
                .with("perfect", design.is_perfect());
            deliver(run, "design", io::write_hypergraph(&design.to_hypergraph()), out.as_deref())?
        }
        Command::Search(SearchCmd::F { n, p, q, opts }) => search_run(search::exact_f(*n, *p, *q, opts.budget)?, opts)?,
        Command::Search(SearchCmd::Simple(a)) => {
            search_run(search::exact_free_simple(a.n, a.s, a.k, a.r, a.opts.budget)?, &a.opts)?
        }
        Command::Search(SearchCmd::Multi(a)) => {
            search_run(search::exact_free_multi(a.n, a.s, a.k, a.r, a.opts.budget)?, &a.opts)?
        }
        Command::Search(SearchCmd::H4 { n, ell, opts }) => search_run(search::exact_h4(*n, *ell, opts.budget)?, opts)?,
        Command::Match(MatchCmd::Lin {
            n,
            p,
            colors,
            seed,
            restarts,
            out,
        }) => match matcher::find_avoiding_coloring(*n, *p, *colors, *seed, *restarts) {
            Ok(found) => {
                let run = Run::new(Outcome::Ok)
                    .with("palette_size", found.coloring.palette_size())
                    .with("proper", matcher::is_proper(&found.coloring))
                    .stat("restarts_used", found.restarts_used);
                deliver(run, "coloring", io::write_coloring(&found.coloring), out.as_deref())?
            }
            Err(Error::MatchFailure { u, v, restarts_used }) => Run::new(Outcome::Failure)
                .with("stuck_pair", [u, v])
                .with("restarts_used", restarts_used),
            Err(e) => return Err(e.into()),
        },
        Command::Bounds(BoundsCmd::Table { p }) => Run::new(Outcome::Ok).with("table", bounds::thresholds(*p)?),
        Command::Bounds(BoundsCmd::QuadLimit { f }) => {
            let x = parse_rational(f)?;
            let limit = bounds::quad_limit_from_f(x)?;
            Run::new(Outcome::Ok)
                .with("input", format_rational(&x))
                .with("limit", format_rational(&limit))
        }
        Command::Bounds(BoundsCmd::CertifyH4 { hypergraph, ell }) => {
            let h = load_hypergraph(hypergraph)?;
            let (verdict, certificate) = bounds::certify_h4_pair_count(&h, *ell)?;
            Run::verdict(verdict).with("certificate", certificate)
        }
        Command::Fmt(FmtCmd::Roundtrip { file, kind, out }) => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let kind = match kind {
                FileKind::Auto => detect_kind(&text)?,
                k => *k,
            };
            let canonical = match kind {
                FileKind::Coloring => io::write_coloring(&io::parse_coloring(&text)?),
                _ => io::write_hypergraph(&io::parse_hypergraph(&text)?),
            };
            let run = Run::new(Outcome::Ok)
                .with("kind", if kind == FileKind::Coloring { "coloring" } else { "hypergraph" })
                .with("unchanged", canonical == text);
            deliver(run, "canonical", canonical, out.as_deref())?
        }
    };
    Ok(run.stat("elapsed_seconds", start.elapsed().as_secs_f64()))
}

/// A coloring header has two fields, a hypergraph header three.
fn detect_kind(text: &str) -> anyhow::Result<FileKind> {
    let header = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .find(|l| !l.trim().is_empty())
        .context("file has no header line")?;
    match header.split_whitespace().count() {
        2 => Ok(FileKind::Coloring),
        3 => Ok(FileKind::Hypergraph),
        k => bail!("cannot tell the file kind from a {k}-field header; pass --kind"),
    }
}

fn seed_of(cmd: &Command) -> Option<u64> {
    match cmd {
        Command::Match(MatchCmd::Lin { seed, .. }) => Some(*seed),
        _ => None,
    }
}

fn render_plain(report: &RunReport) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::String(s) if s.contains('\n') => {
                out.push_str(&format!("{prefix}:\n"));
                for line in s.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = format!("command: {}\n", report.command);
    walk("outcome", &serde_json::to_value(report.outcome).expect("outcome serializes"), &mut out);
    walk("", &report.payload, &mut out);
    walk("statistics", &report.statistics, &mut out);
    if let Some(seed) = report.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    out
}

fn classify(err: &anyhow::Error) -> Outcome {
    match err.downcast_ref::<Error>() {
        Some(Error::Precondition(_)) => Outcome::Violation,
        _ => Outcome::Failure,
    }
}

fn is_usage(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<Error>(),
        Some(Error::ParamOutOfRange(_) | Error::UnsupportedDesign(_))
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let (run, code) = match execute(&cli.command) {
        Ok(run) => {
            let code = run.outcome.exit_code();
            (run, code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if is_usage(&err) { EXIT_USAGE } else { classify(&err).exit_code() };
            let mut run = Run::new(classify(&err)).with("error", format!("{err:#}"));
            if let Some(Error::Precondition(w)) = err.downcast_ref::<Error>() {
                run = run.with("witness", w);
            }
            (run, code)
        }
    };
    let report = RunReport {
        schema: 1,
        command: command_name(&cli.command).into(),
        parameters: parameters(&cli.command),
        outcome: run.outcome,
        payload: Value::Object(run.payload),
        statistics: Value::Object(run.statistics),
        seed: seed_of(&cli.command),
    };
    let text = if cli.plain {
        render_plain(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    };
    // a closed stdout (e.g. piped into `head`) is not an error of the run
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code)
}
