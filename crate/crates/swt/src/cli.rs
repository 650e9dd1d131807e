//! The `swt` command line. [`run`] never exits the process; it returns
//! the exit code and the text meant for standard output and standard
//! error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{analyze, apply_move, exclude_three_summands, BraidWord, Move, Verdict};
use crate::enumerate::{
    enumerate_paired, enumerate_webs, exponent_vectors, knot_classes, positive_words,
    run_property_sweep_with, GhostRule, SweepSpec,
};
use crate::error::{GraphError, WebError};
use crate::graph::{
    export_dot, find_scharlemann_cycles, load, trace_faces, validate, Case, Document,
    GraphDocument, Side, Source,
};
use crate::web::{
    feasible_slopes, find_full_quota, load_web, shared_vertex_analysis, web_divisibility, LoadedWeb,
};

/// Outcome of one invocation: 0 pass, 1 violations or counterexamples,
/// 2 usage or input error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn input_error(message: impl std::fmt::Display) -> Self {
        CommandResult {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

pub const DEPTH_ENV: &str = "SWT_DEPTH_DEFAULT";

fn default_depth() -> usize {
    std::env::var(DEPTH_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

#[derive(Parser, Debug)]
#[command(
    name = "swt",
    version,
    about = "Graphs of intersection, great webs and positive braid words"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a paired configuration.
    Validate { file: PathBuf },
    /// Trace the faces of one side.
    Faces {
        file: PathBuf,
        #[arg(long, default_value = "Q")]
        side: Side,
    },
    /// List Scharlemann cycles of G_Q.
    Scharlemann { file: PathBuf },
    /// Great webs: certification, Γ, regions and quotas.
    #[command(subcommand)]
    Web(WebCommand),
    /// Slopes allowed for three summands at a bridge number.
    Slopes {
        #[arg(long)]
        bridge: u32,
    },
    /// Braid words: analysis, rewrites and exclusion.
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Exhaustive generation and property sweeps.
    Enumerate(EnumerateArgs),
    /// Export graphs for external tools.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand, Debug)]
enum WebCommand {
    /// Certify a great web.
    Verify {
        file: PathBuf,
        /// Web vertex ids; defaults to the web file's list or all of G_Q.
        #[arg(long, num_args = 1..)]
        vertices: Vec<String>,
    },
    /// The Γ graph on the P side.
    Gamma { file: PathBuf },
    /// Region counts and the divisibility argument.
    Divisibility { file: PathBuf },
    /// Parallel families and the full-quota search.
    Quota { file: PathBuf },
    /// Vertices shared by the two anchor cycles.
    Shared { file: PathBuf },
}

#[derive(Args, Debug, Clone)]
struct WordArgs {
    /// Letters such as "1 2 -1" or "s1 s2^-1".
    word: String,
    /// Strand count; defaults to one more than the largest index.
    #[arg(long)]
    strands: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum BraidCommand {
    Analyze(WordArgs),
    /// Apply moves in order, e.g. `--moves braid@0,conjugate`.
    Rewrite {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        moves: Vec<Move>,
    },
    /// Three-summand exclusion for a positive knot closure.
    Exclude3 {
        #[command(flatten)]
        word: WordArgs,
        /// Braid relations allowed; defaults to SWT_DEPTH_DEFAULT or 8.
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Threads for sharded runs; output does not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    #[command(subcommand)]
    target: EnumerateTarget,
}

#[derive(Args, Debug, Clone)]
struct CaseArgs {
    /// Scharlemann cycle length in the general case.
    #[arg(long, default_value_t = 2)]
    l: u32,
    /// Three summands: l1,l2,x,p1,p2.
    #[arg(long, value_delimiter = ',', num_args = 5)]
    three: Option<Vec<u32>>,
}

impl CaseArgs {
    fn case(&self) -> Case {
        match self.three.as_deref() {
            Some(&[l1, l2, x, p1, p2]) => Case::ThreeSummands { l1, l2, x, p1, p2 },
            _ => Case::General { l: self.l },
        }
    }
}

#[derive(Subcommand, Debug)]
enum EnumerateTarget {
    /// Admissible web patches.
    Webs {
        #[arg(long, value_delimiter = ',', required = true)]
        v: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[command(flatten)]
        case: CaseArgs,
        /// Allow regular labels without a ghost.
        #[arg(long)]
        relaxed: bool,
    },
    /// Valid paired configurations with their great webs.
    Paired {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Positive words, or positive knot classes with every e_i >= 2.
    Braids {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// List knot classes with s <= S instead of all words.
        #[arg(long)]
        knots_s_max: Option<u32>,
    },
    /// Run a property sweep from a sweep file and print its manifest.
    Sweep {
        #[arg(value_name = "FILE")]
        spec: PathBuf,
        /// Also write the manifest here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record wall time in the manifest.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCommand {
    /// Graphviz description of one side.
    Dot {
        file: PathBuf,
        #[arg(long, default_value = "Q")]
        side: Side,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out.finish(cli.json),
        Err(e) => CommandResult::input_error(e),
    }
}

/// A report before rendering.
struct Output {
    value: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn new(report: &impl Serialize, text: String, failed: bool) -> Result<Self, String> {
        let value = serde_json::to_value(report).map_err(|e| e.to_string())?;
        Ok(Output {
            value,
            text,
            failed,
        })
    }

    fn finish(self, json: bool) -> CommandResult {
        let stdout = if json {
            serde_json::to_string_pretty(&self.value).expect("value serializes") + "\n"
        } else {
            self.text
        };
        CommandResult {
            code: i32::from(self.failed),
            stdout,
            stderr: String::new(),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Faces { file, side } => {
            let doc = read(file)?;
            let faces = trace_faces(source(&doc), *side).map_err(|e| e.to_string())?;
            let mut text = String::new();
            for f in &faces {
                let corners: Vec<String> = f
                    .corners
                    .iter()
                    .map(|c| format!("{}({},{})", c.vertex, c.labels.0, c.labels.1))
                    .collect();
                text += &format!(
                    "face {} [{}-gon]: {}\n",
                    f.index,
                    f.length,
                    corners.join(" ")
                );
            }
            Output::new(&faces, text, false)
        }
        Command::Scharlemann { file } => {
            let doc = read(file)?;
            let cycles = find_scharlemann_cycles(source(&doc)).map_err(|e| e.to_string())?;
            let mut text = format!("{} Scharlemann cycle(s)\n", cycles.len());
            for c in &cycles {
                text += &format!(
                    "face {}: labels ({}, {}), length {}, vertices {}, arcs {}{}\n",
                    c.face,
                    c.labels.0,
                    c.labels.1,
                    c.length,
                    c.vertices.join(" "),
                    c.arcs.join(" "),
                    match c.length_ok() {
                        Some(false) => format!(" (expected length {})", c.expected_length.unwrap()),
                        _ => String::new(),
                    }
                );
            }
            let failed = cycles.iter().any(|c| c.length_ok() == Some(false));
            Output::new(&cycles, text, failed)
        }
        Command::Web(w) => cmd_web(w),
        Command::Slopes { bridge } => {
            let slopes = feasible_slopes(*bridge);
            let mut text = format!(
                "{} feasible slope(s) at bridge number {bridge}\n",
                slopes.len()
            );
            for s in &slopes {
                text += &format!("l1 = {}, l2 = {}, |r| = {}\n", s.l1, s.l2, s.r);
            }
            Output::new(&slopes, text, false)
        }
        Command::Braid(b) => cmd_braid(b),
        Command::Enumerate(e) => cmd_enumerate(e),
        Command::Export(ExportCommand::Dot { file, side }) => {
            let doc = read(file)?;
            let dot = export_dot(source(&doc), *side).map_err(|e| e.to_string())?;
            Output::new(&json!({ "dot": dot }), dot.clone(), false)
        }
    }
}

fn read(file: &Path) -> Result<Document, String> {
    load(file).map_err(|e| format!("{}: {e}", file.display()))
}

fn source(doc: &Document) -> Source<'_> {
    match doc {
        Document::Paired(d) => Source::Paired(d),
        Document::Patch(p) => Source::Patch(p),
    }
}

fn cmd_validate(file: &Path) -> Result<Output, String> {
    let Document::Paired(data) = read(file)? else {
        return Err(format!(
            "{}: validate needs a paired configuration, found a web patch",
            file.display()
        ));
    };
    let report = validate(&data);
    let mut text = if report.is_valid() {
        "valid: no violations\n".to_string()
    } else {
        format!("{} violation(s)\n", report.violations.len())
    };
    for v in &report.violations {
        text += &format!("{v}\n");
    }
    Output::new(&report, text, !report.is_valid())
}

fn load_certified(
    file: &Path,
    vertices: &[String],
) -> Result<(LoadedWeb, crate::web::GreatWeb), String> {
    let mut loaded = load_web(file).map_err(|e| format!("{}: {e}", file.display()))?;
    if !vertices.is_empty() {
        loaded.vertices = vertices.to_vec();
    }
    let cert = loaded.certify().map_err(|e| e.to_string())?;
    match cert.web {
        Some(web) => Ok((loaded, web)),
        None => Err(WebError::NotCertified(cert.violations).to_string()),
    }
}

fn cmd_web(w: &WebCommand) -> Result<Output, String> {
    match w {
        WebCommand::Verify { file, vertices } => {
            let mut loaded = load_web(file).map_err(|e| format!("{}: {e}", file.display()))?;
            if !vertices.is_empty() {
                loaded.vertices = vertices.clone();
            }
            let cert = loaded.certify().map_err(|e: GraphError| e.to_string())?;
            let text = match &cert.web {
                Some(web) => format!(
                    "great web on {} ({} edges, {} ghosts)\n",
                    web.vertices.join(" "),
                    web.edges.len(),
                    web.ghosts.len()
                ),
                None => {
                    let mut t =
                        format!("not a great web: {} violation(s)\n", cert.violations.len());
                    for v in &cert.violations {
                        t += &format!("{v}\n");
                    }
                    t
                }
            };
            Output::new(&cert, text, !cert.is_certified())
        }
        WebCommand::Gamma { file } => {
            let (loaded, web) = load_certified(file, &[])?;
            match loaded.gamma(&web) {
                Ok(g) => {
                    let text = format!(
                        "Gamma: {} edges, valences {:?}, bipartite {}{}\n",
                        g.edges.len(),
                        g.valence,
                        g.bipartite,
                        if g.realized {
                            ", from a planar realization"
                        } else {
                            ""
                        }
                    );
                    Output::new(&g, text, false)
                }
                Err(e @ (WebError::Valence { .. } | WebError::Unrealizable)) => Output::new(
                    &json!({ "violation": e.to_string() }),
                    format!("{e}\n"),
                    true,
                ),
                Err(e) => Err(e.to_string()),
            }
        }
        WebCommand::Divisibility { file } => {
            let (loaded, web) = load_certified(file, &[])?;
            let gamma = match loaded.gamma(&web) {
                Ok(g) => g,
                Err(e @ (WebError::Valence { .. } | WebError::Unrealizable)) => {
                    return Output::new(
                        &json!({ "violation": e.to_string() }),
                        format!("{e}\n"),
                        true,
                    )
                }
                Err(e) => return Err(e.to_string()),
            };
            let reports = web_divisibility(&gamma).map_err(|e| e.to_string())?;
            let mut text = String::new();
            for r in &reports {
                text += &format!(
                    "anchor ({}, {}), l = {}, v = {}\n",
                    r.anchor.0, r.anchor.1, r.l, r.v
                );
                for c in &r.checks {
                    text += &format!(
                        "  [{}] {}: {}\n",
                        if c.ok { "ok" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
            }
            let failed = reports.iter().any(|r| !r.passed());
            Output::new(&reports, text, failed)
        }
        WebCommand::Quota { file } => {
            let (_, web) = load_certified(file, &[])?;
            let report = find_full_quota(&web.patch).map_err(|e| e.to_string())?;
            let mut text = format!(
                "{} parallel famil{}\n",
                report.families.len(),
                if report.families.len() == 1 {
                    "y"
                } else {
                    "ies"
                }
            );
            for f in &report.families {
                text += &format!(
                    "  {{{}}}{}\n",
                    f.edges.join(", "),
                    if f.cyclic { " (cyclic)" } else { "" }
                );
            }
            match &report.quota {
                Some(q) => text += &format!("full quota: {}\n", q.edges.join(", ")),
                None => text += "no full quota\n",
            }
            text += &format!("classification: {}\n", report.classification);
            Output::new(&report, text, false)
        }
        WebCommand::Shared { file } => {
            let (loaded, web) = load_certified(file, &[])?;
            let gamma = loaded.gamma(&web).map_err(|e| e.to_string())?;
            let report =
                shared_vertex_analysis(&gamma, &web.vertices).map_err(|e| e.to_string())?;
            let mut text = String::new();
            for p in &report.pairs {
                text += &format!("{p:?}\n");
            }
            text += &format!("verdict: {}\n", report.verdict);
            Output::new(&report, text, !report.is_compliant())
        }
    }
}

fn parse_word(w: &WordArgs) -> Result<BraidWord, String> {
    BraidWord::parse(&w.word, w.strands).map_err(|e| e.to_string())
}

fn cmd_braid(b: &BraidCommand) -> Result<Output, String> {
    match b {
        BraidCommand::Analyze(w) => {
            let word = parse_word(w)?;
            let a = analyze(&word);
            let mut text = format!(
                "{word}\n{}, n = {}, e = {}, e_i = {:?}, components = {}\n",
                if a.is_knot { "knot" } else { "link" },
                a.strands,
                a.e,
                a.e_i,
                a.components
            );
            if let (Some(g), Some(r)) = (a.genus, a.candidate_slope) {
                text += &format!(
                    "genus {g}, candidate slope {r}, s = {}\n",
                    a.s.unwrap_or_default()
                );
            }
            Output::new(&a, text, false)
        }
        BraidCommand::Rewrite { word, moves } => {
            let mut cur = parse_word(word)?;
            let mut steps = vec![json!({ "word": cur.to_signed(), "strands": cur.strands() })];
            let mut text = format!("{cur}\n");
            for mv in moves {
                cur = apply_move(&cur, *mv).map_err(|e| format!("{mv}: {e}"))?;
                text += &format!("{mv} -> {cur}\n");
                steps
                    .push(json!({ "move": mv, "word": cur.to_signed(), "strands": cur.strands() }));
            }
            let a = analyze(&cur);
            Output::new(&json!({ "steps": steps, "analysis": a }), text, false)
        }
        BraidCommand::Exclude3 { word, depth } => {
            let w = parse_word(word)?;
            let depth = depth.unwrap_or_else(default_depth);
            let r = exclude_three_summands(&w, depth).map_err(|e| e.to_string())?;
            let text = format!(
                "n = {}, e = {}, s = {}, genus {}, candidate slope {}\n{}\nverdict: {}\n",
                r.n, r.e, r.s, r.genus, r.candidate_slope, r.reduction, r.verdict
            );
            Output::new(&r, text, r.verdict == Verdict::Inconclusive)
        }
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| e.to_string())
}

fn cmd_enumerate(e: &EnumerateArgs) -> Result<Output, String> {
    let pool = pool(e.workers)?;
    match &e.target {
        EnumerateTarget::Webs {
            v,
            p,
            case,
            relaxed,
        } => {
            let rule = if *relaxed {
                GhostRule::Relaxed
            } else {
                GhostRule::Ledger
            };
            let grid: Vec<(usize, u32)> = p
                .iter()
                .flat_map(|&p| v.iter().map(move |&v| (v, p)))
                .collect();
            let case = case.case();
            let results: Vec<Result<Value, String>> = pool.install(|| {
                grid.par_iter()
                    .map(|&(v, p)| {
                        let patches = enumerate_webs(v, p, case, rule).map_err(|e| e.to_string())?;
                        let docs: Vec<GraphDocument> = patches.iter().map(GraphDocument::from_patch).collect();
                        Ok(json!({ "v": v, "p": p, "case": case, "count": docs.len(), "patches": docs }))
                    })
                    .collect()
            });
            let results: Vec<Value> = results.into_iter().collect::<Result<_, _>>()?;
            let text = results
                .iter()
                .map(|r| format!("v = {}, p = {}: {} patch(es)\n", r["v"], r["p"], r["count"]))
                .collect();
            Output::new(&results, text, false)
        }
        EnumerateTarget::Paired { p, q, case } => {
            let grid: Vec<(u32, u32)> = p
                .iter()
                .flat_map(|&p| q.iter().map(move |&q| (p, q)))
                .collect();
            let case = case.case();
            let results: Vec<Result<Value, String>> = pool.install(|| {
                grid.par_iter()
                    .map(|&(p, q)| {
                        let configs = enumerate_paired(p, q, case).map_err(|e| e.to_string())?;
                        let items: Vec<Value> = configs
                            .iter()
                            .map(|c| {
                                let webs: Vec<&Vec<String>> = c.webs.iter().map(|w| &w.vertices).collect();
                                json!({ "graph": GraphDocument::from_paired(&c.data), "webs": webs })
                            })
                            .collect();
                        Ok(json!({ "p": p, "q": q, "case": case, "count": items.len(), "configurations": items }))
                    })
                    .collect()
            });
            let results: Vec<Value> = results.into_iter().collect::<Result<_, _>>()?;
            let text = results
                .iter()
                .map(|r| {
                    let webs: usize = r["configurations"].as_array().map_or(0, |a| {
                        a.iter()
                            .map(|c| c["webs"].as_array().map_or(0, Vec::len))
                            .sum()
                    });
                    format!(
                        "p = {}, q = {}: {} configuration(s), {webs} great web(s)\n",
                        r["p"], r["q"], r["count"]
                    )
                })
                .collect();
            Output::new(&results, text, false)
        }
        EnumerateTarget::Braids {
            n,
            max_len,
            knots_s_max,
        } => {
            let results: Vec<Value> = pool.install(|| {
                n.par_iter()
                    .map(|&n| match knots_s_max {
                        Some(s_max) => {
                            let words: Vec<Vec<i32>> = (0..=*s_max)
                                .flat_map(|s| exponent_vectors(n, 2 * n as usize - 2 + s as usize))
                                .flat_map(|e| knot_classes(&e))
                                .map(|w| w.to_signed())
                                .collect();
                            json!({ "n": n, "s_max": s_max, "count": words.len(), "words": words })
                        }
                        None => {
                            let words: Vec<Vec<i32>> = positive_words(n, *max_len).map(|w| w.to_signed()).collect();
                            json!({ "n": n, "max_len": max_len, "count": words.len(), "words": words })
                        }
                    })
                    .collect()
            });
            let text = results
                .iter()
                .map(|r| format!("n = {}: {} word(s)\n", r["n"], r["count"]))
                .collect();
            Output::new(&results, text, false)
        }
        EnumerateTarget::Sweep {
            spec,
            output,
            timing,
        } => {
            let text =
                std::fs::read_to_string(spec).map_err(|e| format!("{}: {e}", spec.display()))?;
            let mut spec: SweepSpec =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", spec.display()))?;
            if *timing {
                spec.record_timing = true;
            }
            if output.is_some() {
                spec.output = output.clone();
            }
            let manifest = run_property_sweep_with(&spec, e.workers).map_err(|e| e.to_string())?;
            if let Some(path) = &spec.output {
                std::fs::write(path, manifest.to_json())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let mut text = format!(
                "{} object(s) over {} grid point(s), {} counterexample(s)\n",
                manifest.count,
                manifest.grid.len(),
                manifest.counterexamples.len()
            );
            for (p, t) in &manifest.tallies {
                text += &format!("  {p}: {} checked, {} failed\n", t.checked, t.failed);
            }
            for c in &manifest.counterexamples {
                text += &format!(
                    "  counterexample [{}] {}: {}\n",
                    c.property, c.params, c.detail
                );
            }
            let failed = !manifest.counterexamples.is_empty();
            Output::new(&manifest, text, failed)
        }
    }
}
