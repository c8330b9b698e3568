//! Command-line front end. The binary is a thin wrapper around [`run`];
//! every subcommand builds its answer as a string so outputs are testable
//! and byte-deterministic.
//!
//! Exit codes are a stable contract: 0 success, 2 input error, 3 numerical
//! failure, 4 enumeration-cap exceeded, 5 verification failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corpus::standard_corpus;
use crate::erasure::{self, ErasureError, ErasureSet, SearchConfig};
use crate::frame::{DualFrame, Frame, FrameError};
use crate::graph::{parse_edge_list, Graph, GraphError, GraphFamily};
use crate::json::{
    to_json_string, CheckDoc, ErasureReportDoc, FrameDoc, GraphDoc, OffsetsFile, RhoProfileDoc,
};
use crate::linalg::LinalgError;
use crate::subsets::combinations;
use crate::verify::{run_checks, CheckId, CheckStatus, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Parser)]
#[command(
    name = "framelab",
    version,
    about = "Frames generated by graph Laplacians: dual families, erasure spectra, optimal-dual checks",
    long_about = "Frames generated by graph Laplacians: dual families, erasure spectra, and \
spectrally-optimal-dual verification.\n\nGraphs come from --edges FILE (edge-list text: first \
non-comment line n, then one `u v` pair per line, 1-based, `#` comments) or --gen SPEC with \
SPEC = family:n (path, cycle, complete, star, empty) or union:spec,spec,...\n\nThe \
FRAMELAB_THREADS environment variable caps the threads used by the exhaustive erasure scans."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a frame from a graph and emit it with residual diagnostics
    Frame(FrameArgs),
    /// Erasure profile: max spectral radius per erasure size, optional per-set reports
    Analyze(AnalyzeArgs),
    /// Run the named identity checks on one graph and emit a certificate
    Verify(VerifyArgs),
    /// Empirical dual search over random per-component offsets
    Search(SearchArgs),
    /// Run every check across the built-in graph corpus
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct GraphSourceArgs {
    /// Generator spec: family:n or union:spec,spec,...
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "edges")]
    generator: Option<String>,
    /// Edge-list file
    #[arg(long, value_name = "PATH")]
    edges: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    /// Global for connected graphs, blockwise for disconnected ones
    Auto,
    /// One eigendecomposition of the whole Laplacian
    Global,
    /// Per-component blocks
    Blockwise,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct FrameArgs {
    #[command(flatten)]
    source: GraphSourceArgs,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
    construction: ConstructionArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GraphSourceArgs,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
    construction: ConstructionArg,
    /// Erasure size or inclusive range, e.g. `2` or `1..3`
    #[arg(long = "r", value_name = "R[..R]", default_value = "1..2")]
    r: String,
    /// Dual frame: `canonical`, `alternate` (block-shifted offset dual for
    /// disconnected blockwise frames), or a JSON offsets file
    #[arg(long, value_name = "SPEC", default_value = "canonical")]
    dual: String,
    /// Emit a report for every erasure set, not just the profile
    #[arg(long)]
    full: bool,
    /// Spectrum comparison tolerance for the per-set reports
    #[arg(long, value_name = "TOL", default_value_t = erasure::SPECTRUM_MATCH_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GraphSourceArgs,
    /// Check to run (`all` or one of: gramian, diagonal-operator,
    /// inner-products, full-spark, equivalence, dual-family, rho-profile,
    /// spectrum, invariance, uniqueness, nonuniqueness)
    #[arg(long, value_name = "NAME", default_value = "all")]
    theorem: String,
    /// Random perturbations per graph in the uniqueness check
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Largest erasure size for the profile/invariance scans
    #[arg(long = "r-max", default_value_t = 4)]
    r_max: usize,
    /// Spectrum comparison tolerance
    #[arg(long, value_name = "TOL", default_value_t = 1e-7)]
    tol_spectrum: f64,
    /// Rho tie/transport tolerance
    #[arg(long, value_name = "TOL", default_value_t = 1e-7)]
    tol_rho: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    source: GraphSourceArgs,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Auto)]
    construction: ConstructionArg,
    /// Deepest erasure size of the inductive filter
    #[arg(long = "r", default_value_t = 2)]
    r: usize,
    /// Random offset tuples to draw (0 = canonical baseline only)
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated scale factors applied to every drawn offset tuple
    #[arg(long, value_name = "S,S,...", default_value = "0.001,1,1000")]
    scales: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct CorpusArgs {
    /// Drop corpus graphs with more vertices than this
    #[arg(long = "max-n", default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random perturbations per graph in the uniqueness check
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Largest erasure size for the profile/invariance scans
    #[arg(long = "r-max", default_value_t = 4)]
    r_max: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

/// A failed run: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct CliFailure {
    pub code: i32,
    pub message: String,
}

impl CliFailure {
    fn input(message: impl Into<String>) -> CliFailure {
        CliFailure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<GraphError> for CliFailure {
    fn from(e: GraphError) -> CliFailure {
        CliFailure::input(e.to_string())
    }
}

impl From<LinalgError> for CliFailure {
    fn from(e: LinalgError) -> CliFailure {
        CliFailure {
            code: EXIT_NUMERICAL,
            message: e.to_string(),
        }
    }
}

impl From<FrameError> for CliFailure {
    fn from(e: FrameError) -> CliFailure {
        let code = match e {
            FrameError::NoEdges => EXIT_INPUT,
            FrameError::EnumerationCap { .. } => EXIT_CAP,
            FrameError::OffsetCount { .. }
            | FrameError::OffsetDim { .. }
            | FrameError::MissingGraph => EXIT_INPUT,
            _ => EXIT_NUMERICAL,
        };
        CliFailure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ErasureError> for CliFailure {
    fn from(e: ErasureError) -> CliFailure {
        match e {
            ErasureError::EnumerationCap { .. } => CliFailure {
                code: EXIT_CAP,
                message: e.to_string(),
            },
            ErasureError::Frame(f) => f.into(),
            ErasureError::Linalg(l) => l.into(),
            ErasureError::EmptyErasure
            | ErasureError::IndexOutOfRange { .. }
            | ErasureError::RankOutOfRange { .. }
            | ErasureError::PredictionRank { .. }
            | ErasureError::NotConnected
            | ErasureError::NotDisconnected
            | ErasureError::AllComponentsNull
            | ErasureError::RequiresBlockwise => CliFailure::input(e.to_string()),
        }
    }
}

/// Parse args already done; run the command, print its output, and return
/// the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok((output, code)) => {
            print!("{output}");
            code
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn execute(cli: Cli) -> Result<(String, i32), CliFailure> {
    match cli.command {
        Command::Frame(args) => cmd_frame(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::Corpus(args) => cmd_corpus(args),
    }
}

/// `family:n` or `union:spec,spec,...`
pub fn parse_generator_spec(spec: &str) -> Result<Graph, String> {
    fn family(part: &str) -> Result<Graph, String> {
        let (name, count) = part
            .split_once(':')
            .ok_or_else(|| format!("bad generator {part:?}, expected family:n"))?;
        let family = match name {
            "path" => GraphFamily::Path,
            "cycle" => GraphFamily::Cycle,
            "complete" => GraphFamily::Complete,
            "star" => GraphFamily::Star,
            "empty" => GraphFamily::Empty,
            other => return Err(format!("unknown graph family {other:?}")),
        };
        let n: usize = count
            .parse()
            .map_err(|_| format!("bad vertex count {count:?} in {part:?}"))?;
        Graph::generate(family, n).map_err(|e| e.to_string())
    }

    if let Some(rest) = spec.strip_prefix("union:") {
        let parts = rest
            .split(',')
            .map(family)
            .collect::<Result<Vec<Graph>, String>>()?;
        let mut iter = parts.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| "union spec needs at least one member".to_string())?;
        Ok(iter.fold(first, |acc, g| acc.disjoint_union(&g)))
    } else {
        family(spec)
    }
}

impl GraphSourceArgs {
    fn load(&self) -> Result<(Graph, String), CliFailure> {
        match (&self.generator, &self.edges) {
            (Some(spec), None) => {
                let g = parse_generator_spec(spec).map_err(CliFailure::input)?;
                Ok((g, spec.clone()))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliFailure::input(format!("cannot read {}: {e}", path.display()))
                })?;
                let g = parse_edge_list(&text)?;
                Ok((g, path.display().to_string()))
            }
            _ => Err(CliFailure::input(
                "exactly one graph source required: --gen SPEC or --edges PATH",
            )),
        }
    }
}

fn build_frame(g: &Graph, construction: ConstructionArg) -> Result<Frame, CliFailure> {
    let f = match construction {
        ConstructionArg::Auto => Frame::from_graph_auto(g),
        ConstructionArg::Global => Frame::from_graph_global(g),
        ConstructionArg::Blockwise => Frame::from_graph_blockwise(g),
    }?;
    Ok(f)
}

fn load_dual(frame: &Frame, spec: &str) -> Result<DualFrame, CliFailure> {
    match spec {
        "canonical" => Ok(frame.canonical_dual()),
        "alternate" => Ok(erasure::alternate_dual(frame)?),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliFailure::input(format!(
                    "--dual {path:?} is neither `canonical`, `alternate`, nor a readable file: {e}"
                ))
            })?;
            let parsed: OffsetsFile = serde_json::from_str(&text)
                .map_err(|e| CliFailure::input(format!("bad offsets file {path:?}: {e}")))?;
            Ok(frame.dual_from_offsets(&parsed.offsets)?)
        }
    }
}

/// `R` or `LO..HI`, inclusive.
fn parse_r_range(spec: &str, n: usize) -> Result<(usize, usize), CliFailure> {
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => {
            let lo = a
                .parse::<usize>()
                .map_err(|_| CliFailure::input(format!("bad erasure size {a:?}")))?;
            let hi = b
                .parse::<usize>()
                .map_err(|_| CliFailure::input(format!("bad erasure size {b:?}")))?;
            (lo, hi)
        }
        None => {
            let r = spec
                .parse::<usize>()
                .map_err(|_| CliFailure::input(format!("bad erasure size {spec:?}")))?;
            (r, r)
        }
    };
    if lo < 1 || hi < lo || hi > n.saturating_sub(1) {
        return Err(CliFailure::input(format!(
            "erasure range {lo}..{hi} outside [1, {}]",
            n.saturating_sub(1)
        )));
    }
    Ok((lo, hi))
}

fn cmd_frame(args: FrameArgs) -> Result<(String, i32), CliFailure> {
    let (graph, _) = args.source.load()?;
    let frame = build_frame(&graph, args.construction)?;
    let doc = FrameDoc::new(&frame, true);
    let out = match args.format {
        OutputFormat::Json => format!("{}\n", to_json_string(&doc)),
        OutputFormat::Csv => {
            return Err(CliFailure::input("frame output supports json or text"));
        }
        OutputFormat::Text => {
            let d = doc.diagnostics.as_ref().expect("diagnostics requested");
            let mut s = String::new();
            let _ = writeln!(
                s,
                "frame: dim {} x n {} ({})",
                doc.dim, doc.n, doc.construction
            );
            for row in &doc.synthesis {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
                let _ = writeln!(s, "  [{}]", cells.join(" "));
            }
            let _ = writeln!(s, "gramian residual:      {:.3e}", d.gramian_residual);
            let _ = writeln!(s, "operator off-diagonal: {:.3e}", d.operator_off_diagonal);
            s
        }
    };
    Ok((out, EXIT_OK))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(String, i32), CliFailure> {
    let (graph, _) = args.source.load()?;
    let frame = build_frame(&graph, args.construction)?;
    let (lo, hi) = parse_r_range(&args.r, frame.vector_count())?;
    let dual = load_dual(&frame, &args.dual)?;
    let profile = erasure::rho_profile(&frame, &dual, lo, hi)?;

    let reports = if args.full {
        let n = frame.vector_count();
        let mut docs = Vec::new();
        for r in lo..=hi {
            for lambda in combinations(n, r) {
                let e = ErasureSet::new(&lambda, n)?;
                let report = erasure::check_spectrum_with_tolerance(&frame, &dual, &e, args.tol)?;
                docs.push(ErasureReportDoc::new(&report));
            }
        }
        Some(docs)
    } else {
        None
    };
    let doc = RhoProfileDoc::new(&frame, &dual, &profile, reports);

    let out = match args.format {
        OutputFormat::Json => format!("{}\n", to_json_string(&doc)),
        OutputFormat::Csv => doc.to_csv(),
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "rho profile ({} on {} vertices, dual: {})",
                doc.construction,
                doc.graph.n,
                if dual.is_canonical() {
                    "canonical"
                } else {
                    "offset"
                }
            );
            for row in &doc.rows {
                let argmax: Vec<String> =
                    row.argmax_lambda.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    s,
                    "  r = {:<2} rho = {:<22.17} argmax Λ = {{{}}}",
                    row.r,
                    row.rho,
                    argmax.join(", ")
                );
            }
            if let Some(reports) = &doc.reports {
                for rep in reports {
                    let spec: Vec<String> = rep
                        .spectrum
                        .iter()
                        .map(|[re, im]| {
                            if im.abs() > 0.0 {
                                format!("{re:.6}{im:+.6}i")
                            } else {
                                format!("{re:.6}")
                            }
                        })
                        .collect();
                    let lam: Vec<String> = rep.lambda.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        s,
                        "  Λ = {{{}}} rho = {:.12} spectrum = [{}]{}",
                        lam.join(", "),
                        rep.rho,
                        spec.join(", "),
                        match rep.prediction_match {
                            Some(true) => " matches prediction",
                            Some(false) => " MISMATCHES prediction",
                            None => "",
                        }
                    );
                }
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct VerifyDoc {
    graph: GraphDoc,
    label: String,
    checks: Vec<CheckDoc>,
    all_passed: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<(String, i32), CliFailure> {
    let (graph, label) = args.source.load()?;
    let ids: Vec<CheckId> = if args.theorem == "all" {
        CheckId::ALL.to_vec()
    } else {
        vec![CheckId::parse(&args.theorem).ok_or_else(|| {
            CliFailure::input(format!(
                "unknown check {:?}; expected `all` or one of: {}",
                args.theorem,
                CheckId::ALL
                    .iter()
                    .map(|c| c.name())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?]
    };
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
        r_max: args.r_max,
        tol_spectrum: args.tol_spectrum,
        tol_rho: args.tol_rho,
    };
    let outcomes = run_checks(&ids, &graph, &label, &opts)?;
    let all_passed = outcomes.iter().all(|o| o.status != CheckStatus::Fail);
    let docs: Vec<CheckDoc> = outcomes.iter().map(CheckDoc::new).collect();

    let out = match args.format {
        OutputFormat::Json => {
            let doc = VerifyDoc {
                graph: GraphDoc::new(&graph),
                label,
                checks: docs,
                all_passed,
            };
            format!("{}\n", to_json_string(&doc))
        }
        OutputFormat::Csv => {
            let mut s = String::from("graph,theorem,status,max_residual\n");
            for d in &docs {
                let worst = d
                    .residuals
                    .iter()
                    .map(|(_, v)| *v)
                    .fold(0.0_f64, f64::max);
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    d.graph,
                    d.theorem,
                    d.status,
                    crate::json::fmt_f64(worst)
                );
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for d in &docs {
                let _ = writeln!(s, "{:<4} {:<18} {}", d.status, d.theorem, d.detail);
            }
            s
        }
    };
    let code = if all_passed { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((out, code))
}

#[derive(Serialize)]
struct SearchLevelDoc {
    r: usize,
    min_rho: f64,
    survivors: usize,
    canonical_survives: bool,
}

#[derive(Serialize)]
struct SearchSurvivorDoc {
    label: String,
    offsets: Vec<Vec<f64>>,
    rho: Vec<f64>,
}

#[derive(Serialize)]
struct SearchDoc {
    graph: GraphDoc,
    construction: String,
    r: usize,
    samples: usize,
    seed: u64,
    scales: Vec<f64>,
    levels: Vec<SearchLevelDoc>,
    canonical_optimal: bool,
    survivors: Vec<SearchSurvivorDoc>,
}

fn cmd_search(args: SearchArgs) -> Result<(String, i32), CliFailure> {
    let (graph, _) = args.source.load()?;
    let frame = build_frame(&graph, args.construction)?;
    let scales: Vec<f64> = args
        .scales
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliFailure::input(format!("bad scale {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    let config = SearchConfig {
        samples: args.samples,
        seed: args.seed,
        scales: scales.clone(),
    };
    let report = erasure::sod_search(&frame, args.r, &config)?;

    let doc = SearchDoc {
        graph: GraphDoc::new(&graph),
        construction: frame.construction().name().to_string(),
        r: args.r,
        samples: args.samples,
        seed: args.seed,
        scales,
        levels: report
            .levels
            .iter()
            .map(|l| SearchLevelDoc {
                r: l.r,
                min_rho: l.min_rho,
                survivors: l.survivors,
                canonical_survives: l.canonical_survives,
            })
            .collect(),
        canonical_optimal: report.canonical_optimal,
        survivors: report
            .final_survivors
            .iter()
            .map(|&i| SearchSurvivorDoc {
                label: report.candidates[i].label.clone(),
                offsets: report.candidates[i].offsets.clone(),
                rho: report.candidates[i].rho.clone(),
            })
            .collect(),
    };

    let out = match args.format {
        OutputFormat::Json => format!("{}\n", to_json_string(&doc)),
        OutputFormat::Csv => {
            let mut s = String::from("r,min_rho,survivors,canonical_survives\n");
            for l in &doc.levels {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    l.r,
                    crate::json::fmt_f64(l.min_rho),
                    l.survivors,
                    l.canonical_survives
                );
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "dual search: {} candidates, inductive filter to r = {}",
                doc.samples * doc.scales.len().max(1) + 1,
                doc.r
            );
            for l in &doc.levels {
                let _ = writeln!(
                    s,
                    "  r = {:<2} min rho = {:<22.17} survivors = {}",
                    l.r, l.min_rho, l.survivors
                );
            }
            let _ = writeln!(
                s,
                "canonical attains the minimum at every level: {}",
                doc.canonical_optimal
            );
            for sv in &doc.survivors {
                let _ = writeln!(s, "  surviving dual: {}", sv.label);
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

#[derive(Serialize)]
struct CorpusGraphDoc {
    label: String,
    n: usize,
    components: usize,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct CorpusSummaryDoc {
    graphs: usize,
    checks: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct CorpusDoc {
    seed: u64,
    max_n: usize,
    trials: usize,
    r_max: usize,
    results: Vec<CorpusGraphDoc>,
    summary: CorpusSummaryDoc,
}

fn cmd_corpus(args: CorpusArgs) -> Result<(String, i32), CliFailure> {
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
        r_max: args.r_max,
        ..VerifyOptions::default()
    };
    let corpus = standard_corpus(args.max_n, args.seed);
    let mut results = Vec::new();
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;
    for entry in &corpus {
        let outcomes = run_checks(&CheckId::ALL, &entry.graph, &entry.label, &opts)?;
        for o in &outcomes {
            match o.status {
                CheckStatus::Pass => passed += 1,
                CheckStatus::Fail => failed += 1,
                CheckStatus::Skipped => skipped += 1,
            }
        }
        results.push(CorpusGraphDoc {
            label: entry.label.clone(),
            n: entry.graph.vertex_count(),
            components: entry.graph.component_count(),
            checks: outcomes.iter().map(CheckDoc::new).collect(),
        });
    }
    let summary = CorpusSummaryDoc {
        graphs: corpus.len(),
        checks: passed + failed + skipped,
        passed,
        failed,
        skipped,
    };
    let all_ok = failed == 0;
    let doc = CorpusDoc {
        seed: args.seed,
        max_n: args.max_n,
        trials: args.trials,
        r_max: args.r_max,
        results,
        summary,
    };

    let out = match args.format {
        OutputFormat::Json => format!("{}\n", to_json_string(&doc)),
        OutputFormat::Csv => {
            let mut s = String::from("graph,theorem,status,max_residual\n");
            for g in &doc.results {
                for c in &g.checks {
                    let worst = c
                        .residuals
                        .iter()
                        .map(|(_, v)| *v)
                        .fold(0.0_f64, f64::max);
                    let _ = writeln!(
                        s,
                        "{},{},{},{}",
                        g.label,
                        c.theorem,
                        c.status,
                        crate::json::fmt_f64(worst)
                    );
                }
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for g in &doc.results {
                let line: Vec<String> = g
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{}{}",
                            c.theorem,
                            match c.status.as_str() {
                                "pass" => ":pass",
                                "fail" => ":FAIL",
                                _ => ":skip",
                            }
                        )
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    "{:<32} n={:<2} k={:<2} {}",
                    g.label,
                    g.n,
                    g.components,
                    line.join(" ")
                );
            }
            let _ = writeln!(
                s,
                "summary: {} graphs, {} checks: {} pass, {} fail, {} skipped",
                doc.summary.graphs,
                doc.summary.checks,
                doc.summary.passed,
                doc.summary.failed,
                doc.summary.skipped
            );
            s
        }
    };
    let code = if all_ok { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((out, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_spec_parsing() {
        let g = parse_generator_spec("complete:4").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);

        let u = parse_generator_spec("union:path:2,path:2").unwrap();
        assert_eq!(u.vertex_count(), 4);
        assert_eq!(u.component_count(), 2);

        let triple = parse_generator_spec("union:path:2,path:2,complete:3").unwrap();
        assert_eq!(triple.vertex_count(), 7);
        assert_eq!(triple.component_count(), 3);

        assert!(parse_generator_spec("blob:3").is_err());
        assert!(parse_generator_spec("path").is_err());
        assert!(parse_generator_spec("path:x").is_err());
        assert!(parse_generator_spec("cycle:2").is_err());
    }

    #[test]
    fn r_range_parsing() {
        assert_eq!(parse_r_range("2", 5).unwrap(), (2, 2));
        assert_eq!(parse_r_range("1..3", 5).unwrap(), (1, 3));
        assert!(parse_r_range("0..2", 5).is_err());
        assert!(parse_r_range("3..2", 5).is_err());
        assert!(parse_r_range("1..5", 5).is_err());
        assert!(parse_r_range("x", 5).is_err());
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(CliFailure::from(FrameError::NoEdges).code, EXIT_INPUT);
        assert_eq!(
            CliFailure::from(FrameError::EnumerationCap { n: 20, cap: 16 }).code,
            EXIT_CAP
        );
        assert_eq!(
            CliFailure::from(ErasureError::EnumerationCap { n: 20, cap: 16 }).code,
            EXIT_CAP
        );
        assert_eq!(
            CliFailure::from(ErasureError::RankOutOfRange { r: 9, n: 4 }).code,
            EXIT_INPUT
        );
        assert_eq!(
            CliFailure::from(LinalgError::EmptyMatrix).code,
            EXIT_NUMERICAL
        );
    }
}
