//! Batch front door: build complexes, compute Betti tables, emit
//! certificates, run brute-force oracles, and self-check invariants.
//!
//! Every parameter can come from a JSON config file (`--config`);
//! command-line flags win on conflict. The cell budget resolves as
//! default < RAMCERT_BUDGET_CELLS < config < flag. Reports are
//! deterministic for identical inputs at any worker count; the only
//! nondeterministic field is the wall-clock `ms` inside certificates.
//!
//! Exit status: 0 = completed (including mathematically inconclusive
//! verdicts), 2 = inconclusive because the cell budget ran out,
//! 1 = error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use ramcert::complexes::graph::Graph;
use ramcert::complexes::SimplicialComplex;
use ramcert::criterion::{
    certify_chromatic, certify_no_face_coloring, certify_ramsey, Certificate,
};
use ramcert::error::Error;
use ramcert::gfp_homology::reduced_betti;
use ramcert::oracles::{brute_ramsey_holds, chromatic_number, exists_face_coloring};
use ramcert::polytopal::skeleton::{
    enumerate_skeleton, hom_complex, part_complex, rainbow_complex, Budget, SkeletonComplex,
    DEFAULT_CELL_BUDGET,
};
use ramcert::selfcheck::{run_all, DEFAULT_SHORTCUT_TRIALS};

const BUDGET_ENV: &str = "RAMCERT_BUDGET_CELLS";
const DEFAULT_SELFCHECK_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "ramcert",
    about = "Build simplex-product complexes, compute GF(p) cohomology, certify coloring and Ramsey bounds",
    long_about = None,
    version
)]
struct Cli {
    /// JSON config file; flags given on the command line win on conflict
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Thread count for enumeration and rank computations (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Cell budget for skeleton enumeration
    #[arg(long, global = true)]
    budget_cells: Option<usize>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Enumerate a skeleton and emit it as JSON
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Compute the reduced Betti table of a stored skeleton
    Betti(BettiArgs),
    /// Certify a chromatic lower bound for a graph
    CertifyChromatic(CertifyGraphArgs),
    /// Certify a Ramsey upper bound for a pattern graph
    CertifyRamsey(CertifyRamseyArgs),
    /// Certify that a complex admits no face coloring
    CertifyPartition(CertifyPartitionArgs),
    /// Brute-force ground truth at desk scale
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Run the invariant suites; all must pass
    Selfcheck(SelfcheckArgs),
}

#[derive(Subcommand, Clone)]
enum BuildKind {
    /// Ram(source, target) from two complex files
    Ram(BuildRamArgs),
    /// Hom(source, target) from two graph files
    Hom(BuildHomArgs),
    /// Partition complex of a complex with a color count
    Part(BuildPartArgs),
    /// Rainbow complex of (graph, N, m)
    Rainbow(BuildRainbowArgs),
}

#[derive(Args, Clone, Default)]
struct BuildRamArgs {
    /// Source complex JSON file
    #[arg(long)]
    source: Option<PathBuf>,
    /// Target complex JSON file
    #[arg(long)]
    target: Option<PathBuf>,
    /// Highest cell dimension to enumerate
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct BuildHomArgs {
    /// Source graph JSON file
    #[arg(long)]
    source: Option<PathBuf>,
    /// Target graph JSON file
    #[arg(long)]
    target: Option<PathBuf>,
    /// Highest cell dimension to enumerate
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct BuildPartArgs {
    /// Complex JSON file
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Number of colors
    #[arg(long)]
    colors: Option<usize>,
    /// Highest cell dimension to enumerate
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct BuildRainbowArgs {
    /// Pattern graph JSON file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Host complete-graph size N
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Number of product coordinates m
    #[arg(long)]
    m: Option<usize>,
    /// Highest cell dimension to enumerate
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct BettiArgs {
    /// Skeleton JSON file (as produced by `build`)
    #[arg(long)]
    skeleton: Option<PathBuf>,
    /// Field characteristic (prime)
    #[arg(long)]
    p: Option<u64>,
    /// Top degree to report (default: skeleton depth − 1)
    #[arg(long)]
    truncation: Option<i64>,
}

#[derive(Args, Clone, Default)]
struct CertifyGraphArgs {
    /// Graph JSON file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Number of colors n (certifies χ > n)
    #[arg(long)]
    colors: Option<usize>,
    /// Field characteristic (prime)
    #[arg(long)]
    p: Option<u64>,
    /// Prime-power exponent
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args, Clone, Default)]
struct CertifyRamseyArgs {
    /// Pattern graph JSON file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Number of edge colors n (certifies R(g;n) ≤ N)
    #[arg(long)]
    colors: Option<usize>,
    /// Host complete-graph size N
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Field characteristic (prime)
    #[arg(long)]
    p: Option<u64>,
    /// Prime-power exponent
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args, Clone, Default)]
struct CertifyPartitionArgs {
    /// Complex JSON file
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Number of colors n
    #[arg(long)]
    colors: Option<usize>,
    /// Field characteristic (prime)
    #[arg(long)]
    p: Option<u64>,
    /// Prime-power exponent
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Subcommand, Clone)]
enum OracleKind {
    /// Search for a face coloring of a complex
    FaceColoring(OracleFaceColoringArgs),
    /// Exhaustively decide whether R(g;n) ≤ N
    Ramsey(OracleRamseyArgs),
    /// Exact chromatic number of a graph
    Chromatic(OracleChromaticArgs),
}

#[derive(Args, Clone, Default)]
struct OracleFaceColoringArgs {
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    colors: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct OracleRamseyArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    colors: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct OracleChromaticArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct SelfcheckArgs {
    /// Seed for the randomized suites
    #[arg(long)]
    seed: Option<u64>,
    /// Trial count for the facet-shortcut suite
    #[arg(long)]
    trials: Option<usize>,
}

/// Every field a job might need; all optional, merged under flags.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobConfig {
    command: Option<String>,
    graph: Option<PathBuf>,
    complex: Option<PathBuf>,
    source: Option<PathBuf>,
    target: Option<PathBuf>,
    skeleton: Option<PathBuf>,
    colors: Option<usize>,
    #[serde(rename = "N")]
    big_n: Option<usize>,
    p: Option<u64>,
    k: Option<u32>,
    m: Option<usize>,
    max_dim: Option<usize>,
    truncation: Option<i64>,
    budget_cells: Option<usize>,
    workers: Option<usize>,
    output: Option<PathBuf>,
    seed: Option<u64>,
    trials: Option<usize>,
}

/// What one subcommand run produced: a JSON report plus exit status.
struct Outcome {
    report: String,
    exit: u8,
    /// one-line human summary for stderr
    summary: String,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => JobConfig::default(),
    };

    if let Some(workers) = cli.workers.or(config.workers) {
        if workers == 0 {
            return Err(Error::InvalidInput("workers must be at least 1".into()));
        }
        // ignore the error if a global pool already exists (e.g. tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }

    let budget = resolve_budget(&cli, &config)?;
    let command = match cli.command.clone() {
        Some(c) => c,
        None => command_from_config(&config)?,
    };

    let outcome = execute(command, &config, &budget)?;

    let output = cli.output.clone().or_else(|| config.output.clone());
    match output {
        Some(path) => {
            std::fs::write(&path, format!("{}\n", outcome.report)).map_err(|e| {
                Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
            })?;
            eprintln!("{} -> {}", outcome.summary, path.display());
        }
        None => {
            println!("{}", outcome.report);
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(outcome.exit)
}

fn resolve_budget(cli: &Cli, config: &JobConfig) -> Result<Budget, Error> {
    let from_env = match std::env::var(BUDGET_ENV) {
        Ok(text) => Some(text.parse::<usize>().map_err(|_| {
            Error::InvalidInput(format!("{BUDGET_ENV}={text} is not a cell count"))
        })?),
        Err(_) => None,
    };
    let cells = cli
        .budget_cells
        .or(config.budget_cells)
        .or(from_env)
        .unwrap_or(DEFAULT_CELL_BUDGET);
    if cells == 0 {
        return Err(Error::InvalidInput("cell budget must be positive".into()));
    }
    Ok(Budget::cells(cells))
}

/// Build the subcommand from the config file's `command` field when no
/// subcommand was given on the command line.
fn command_from_config(config: &JobConfig) -> Result<Command, Error> {
    let name = config.command.as_deref().ok_or_else(|| {
        Error::InvalidInput(
            "no subcommand given and the config file has no \"command\" field".into(),
        )
    })?;
    let command = match name {
        "build-ram" => Command::Build {
            kind: BuildKind::Ram(BuildRamArgs::default()),
        },
        "build-hom" => Command::Build {
            kind: BuildKind::Hom(BuildHomArgs::default()),
        },
        "build-part" => Command::Build {
            kind: BuildKind::Part(BuildPartArgs::default()),
        },
        "build-rainbow" => Command::Build {
            kind: BuildKind::Rainbow(BuildRainbowArgs::default()),
        },
        "betti" => Command::Betti(BettiArgs::default()),
        "certify-chromatic" => Command::CertifyChromatic(CertifyGraphArgs::default()),
        "certify-ramsey" => Command::CertifyRamsey(CertifyRamseyArgs::default()),
        "certify-partition" => Command::CertifyPartition(CertifyPartitionArgs::default()),
        "oracle-face-coloring" => Command::Oracle {
            kind: OracleKind::FaceColoring(OracleFaceColoringArgs::default()),
        },
        "oracle-ramsey" => Command::Oracle {
            kind: OracleKind::Ramsey(OracleRamseyArgs::default()),
        },
        "oracle-chromatic" => Command::Oracle {
            kind: OracleKind::Chromatic(OracleChromaticArgs::default()),
        },
        "selfcheck" => Command::Selfcheck(SelfcheckArgs::default()),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown command {other:?} in config"
            )))
        }
    };
    Ok(command)
}

fn execute(command: Command, config: &JobConfig, budget: &Budget) -> Result<Outcome, Error> {
    match command {
        Command::Build { kind } => execute_build(kind, config, budget),
        Command::Betti(args) => execute_betti(args, config),
        Command::CertifyChromatic(args) => {
            let graph = load_graph(&need(
                args.graph.or_else(|| config.graph.clone()),
                "--graph",
            )?)?;
            let n = need(args.colors.or(config.colors), "--colors")?;
            let p = need(args.p.or(config.p), "--p")?;
            let k = need(args.k.or(config.k), "--k")?;
            let certificate = certify_chromatic(&graph, n, p, k, budget)?;
            Ok(certificate_outcome(certificate))
        }
        Command::CertifyRamsey(args) => {
            let graph = load_graph(&need(
                args.graph.or_else(|| config.graph.clone()),
                "--graph",
            )?)?;
            let n = need(args.colors.or(config.colors), "--colors")?;
            let big_n = need(args.big_n.or(config.big_n), "--N")?;
            let p = need(args.p.or(config.p), "--p")?;
            let k = need(args.k.or(config.k), "--k")?;
            let certificate = certify_ramsey(&graph, n, big_n, p, k, budget)?;
            Ok(certificate_outcome(certificate))
        }
        Command::CertifyPartition(args) => {
            let complex = load_complex(&need(
                args.complex.or_else(|| config.complex.clone()),
                "--complex",
            )?)?;
            let n = need(args.colors.or(config.colors), "--colors")?;
            let p = need(args.p.or(config.p), "--p")?;
            let k = need(args.k.or(config.k), "--k")?;
            let certificate = certify_no_face_coloring(&complex, n, p, k, budget)?;
            Ok(certificate_outcome(certificate))
        }
        Command::Oracle { kind } => execute_oracle(kind, config),
        Command::Selfcheck(args) => {
            let seed = args.seed.or(config.seed).unwrap_or(DEFAULT_SELFCHECK_SEED);
            let trials = args
                .trials
                .or(config.trials)
                .unwrap_or(DEFAULT_SHORTCUT_TRIALS);
            let reports = run_all(seed, trials);
            let all_passed = reports.iter().all(|r| r.passed);
            let lines: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} {}: {}",
                        if r.passed { "ok  " } else { "FAIL" },
                        r.name,
                        r.detail
                    )
                })
                .collect();
            if !all_passed {
                return Err(Error::Structural(format!(
                    "selfcheck failed:\n{}",
                    lines.join("\n")
                )));
            }
            Ok(Outcome {
                report: lines.join("\n"),
                exit: 0,
                summary: format!("selfcheck: {} suites passed", reports.len()),
            })
        }
    }
}

fn execute_build(kind: BuildKind, config: &JobConfig, budget: &Budget) -> Result<Outcome, Error> {
    let skeleton = match kind {
        BuildKind::Ram(args) => {
            let source = load_complex(&need(
                args.source.or_else(|| config.source.clone()),
                "--source",
            )?)?;
            let target = load_complex(&need(
                args.target.or_else(|| config.target.clone()),
                "--target",
            )?)?;
            let max_dim = need(args.max_dim.or(config.max_dim), "--max-dim")?;
            enumerate_skeleton(&source, &target, max_dim, budget)?
        }
        BuildKind::Hom(args) => {
            let source = load_graph(&need(
                args.source.or_else(|| config.source.clone()),
                "--source",
            )?)?;
            let target = load_graph(&need(
                args.target.or_else(|| config.target.clone()),
                "--target",
            )?)?;
            let max_dim = need(args.max_dim.or(config.max_dim), "--max-dim")?;
            hom_complex(&source, &target, max_dim, budget)?
        }
        BuildKind::Part(args) => {
            let complex = load_complex(&need(
                args.complex.or_else(|| config.complex.clone()),
                "--complex",
            )?)?;
            let colors = need(args.colors.or(config.colors), "--colors")?;
            let max_dim = need(args.max_dim.or(config.max_dim), "--max-dim")?;
            part_complex(&complex, colors, max_dim, budget)?
        }
        BuildKind::Rainbow(args) => {
            let graph = load_graph(&need(
                args.graph.or_else(|| config.graph.clone()),
                "--graph",
            )?)?;
            let big_n = need(args.big_n.or(config.big_n), "--N")?;
            let m = need(args.m.or(config.m), "--m")?;
            let max_dim = need(args.max_dim.or(config.max_dim), "--max-dim")?;
            rainbow_complex(&graph, big_n, m, max_dim, budget)?
        }
    };
    let summary = format!("built skeleton, cells per dimension {:?}", skeleton.dims());
    Ok(Outcome {
        report: skeleton.to_json(),
        exit: 0,
        summary,
    })
}

fn execute_betti(args: BettiArgs, config: &JobConfig) -> Result<Outcome, Error> {
    let skeleton = load_skeleton(&need(
        args.skeleton.or_else(|| config.skeleton.clone()),
        "--skeleton",
    )?)?;
    let p = need(args.p.or(config.p), "--p")?;
    let truncation = args
        .truncation
        .or(config.truncation)
        .unwrap_or_else(|| skeleton.top_dim() as i64 - 1);
    let table = reduced_betti(&skeleton, p, truncation)?;
    let summary = format!(
        "betti over GF({p}) through degree {truncation}: {:?}",
        table.betti
    );
    Ok(Outcome {
        report: table.to_json(),
        exit: 0,
        summary,
    })
}

fn execute_oracle(kind: OracleKind, config: &JobConfig) -> Result<Outcome, Error> {
    match kind {
        OracleKind::FaceColoring(args) => {
            let complex = load_complex(&need(
                args.complex.or_else(|| config.complex.clone()),
                "--complex",
            )?)?;
            let colors = need(args.colors.or(config.colors), "--colors")?;
            let witness = exists_face_coloring(&complex, colors)?;
            let summary = match &witness {
                Some(w) => format!("coloring found using {} colors", w.colors_used()),
                None => "no face coloring exists".into(),
            };
            let report = serde_json::json!({ "witness": witness }).to_string();
            Ok(Outcome {
                report,
                exit: 0,
                summary,
            })
        }
        OracleKind::Ramsey(args) => {
            let graph = load_graph(&need(
                args.graph.or_else(|| config.graph.clone()),
                "--graph",
            )?)?;
            let colors = need(args.colors.or(config.colors), "--colors")?;
            let big_n = need(args.big_n.or(config.big_n), "--N")?;
            let holds = brute_ramsey_holds(&graph, colors, big_n)?;
            Ok(Outcome {
                report: serde_json::json!({ "holds": holds }).to_string(),
                exit: 0,
                summary: format!("ramsey property with {colors} colors on K_{big_n}: {holds}"),
            })
        }
        OracleKind::Chromatic(args) => {
            let graph = load_graph(&need(
                args.graph.or_else(|| config.graph.clone()),
                "--graph",
            )?)?;
            let chi = chromatic_number(&graph)?;
            Ok(Outcome {
                report: serde_json::json!({ "chromatic": chi }).to_string(),
                exit: 0,
                summary: format!("chromatic number {chi}"),
            })
        }
    }
}

fn certificate_outcome(certificate: Certificate) -> Outcome {
    let exit = if certificate.reason == "budget" { 2 } else { 0 };
    let summary = format!(
        "verdict {:?}, bound {}, cells {:?}, reason {:?}, {} ms",
        certificate.verdict,
        certificate.bound,
        certificate.cells,
        certificate.reason,
        certificate.ms
    );
    Outcome {
        report: certificate.to_json(),
        exit,
        summary,
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Error> {
    value.ok_or_else(|| {
        Error::InvalidInput(format!(
            "missing {flag} (give it as a flag or in the config file)"
        ))
    })
}

fn load_config(path: &Path) -> Result<JobConfig, Error> {
    let text = load_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn load_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// Re-anchor a parse error on the real file path.
fn at_path(error: Error, path: &Path) -> Error {
    match error {
        Error::Parse {
            line,
            column,
            message,
            ..
        } => Error::Parse {
            path: path.display().to_string(),
            line,
            column,
            message,
        },
        other => other,
    }
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::from_json(&load_text(path)?).map_err(|e| at_path(e, path))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Error> {
    SimplicialComplex::from_json(&load_text(path)?).map_err(|e| at_path(e, path))
}

fn load_skeleton(path: &Path) -> Result<SkeletonComplex, Error> {
    SkeletonComplex::from_json(&load_text(path)?).map_err(|e| at_path(e, path))
}
