//! Command-line front end.
//!
//! Exit status is 0 on success, 1 on error and 2 when `mine` stopped early
//! because of `--max-candidates` or `--time-budget`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::{
    certificate, gadget_report_csv, gadget_report_json, group_candidates, identify_gadgets,
    CanonError, REPORT_SCHEMA_VERSION,
};
use crate::catalog::{build_gadget, CatalogError, Family, MAX_GENERATION};
use crate::circuit::Circuit;
use crate::corpus::{
    corpus_stats, generate_encoders, ingest, Connectivity, CorpusEntry, CorpusError,
    GeneratorConfig, IngestOptions, Method, Origin,
};
use crate::graph::circuit_to_graph;
use crate::miner::{mine_circuit, MineError, MineLimits, TruncationReason};
use crate::tableau::PrepBasis;

pub const OUTPUT_DIR_ENV: &str = "QGADGET_OUTPUT_DIR";
pub const REPORT_JSON: &str = "gadgets.json";
pub const REPORT_CSV: &str = "gadgets.csv";
pub const RUN_MANIFEST: &str = "run.json";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "qgadget",
    version,
    about = "Mine recurring CNOT gadgets from circuit corpora"
)]
struct Cli {
    /// Suppress the summary line of `mine` and `gen`.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine closed CNOT patterns and report classes that repeat.
    Mine(MineArgs),
    /// Generate a corpus of stabilizer encoders by seeded search.
    Gen(GenArgs),
    /// Print catalog gadgets.
    Catalog(CatalogArgs),
    /// Print corpus statistics as JSON.
    Stats(StatsArgs),
    /// Print canonical-form digests of circuits.
    Canon(CanonArgs),
}

#[derive(Debug, clap::Args)]
struct MineArgs {
    /// Circuit files, plain directories or corpus directories.
    #[arg(long, num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    /// CNOTs per candidate (`C_g`).
    #[arg(long)]
    gadget_cnots: usize,
    /// Report classes occurring more than this many times (`N_c`).
    #[arg(long, default_value_t = 1)]
    min_repeats: usize,
    #[arg(long)]
    max_candidates: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long, env = OUTPUT_DIR_ENV, default_value = "qgadget-out")]
    output: PathBuf,
    /// Recorded in the run manifest; mining itself draws no randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Random,
    Hillclimb,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// `all`, `nn`, `nnn` or a path to an edge-list file.
    #[arg(long, default_value = "all")]
    connectivity: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Hillclimb)]
    method: MethodArg,
    #[arg(long, default_value_t = 1000)]
    attempts: u64,
    #[arg(long, default_value_t = 20)]
    max_gates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many distinct encoders.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, env = OUTPUT_DIR_ENV, default_value = "qgadget-out")]
    output: PathBuf,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, clap::Args)]
struct CatalogArgs {
    /// `dcx`, `pl` or `o`; all families when omitted.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    generation: Option<usize>,
}

#[derive(Debug, clap::Args)]
struct StatsArgs {
    #[arg(long, num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    /// Treat plain circuits as encoders with `k` logical qubits.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, clap::Args)]
struct CanonArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    /// Ancilla bases for qubits `k..n`, e.g. `ZXY`; all `Z` by default.
    #[arg(long)]
    prep: Option<String>,
    /// Also print the canonical form.
    #[arg(long)]
    verbose: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Mine(a) => cmd_mine(&a, cli.quiet),
        Command::Gen(a) => cmd_gen(&a, cli.quiet).map(|()| EXIT_OK),
        Command::Catalog(a) => cmd_catalog(&a).map(|()| EXIT_OK),
        Command::Stats(a) => cmd_stats(&a).map(|()| EXIT_OK),
        Command::Canon(a) => cmd_canon(&a).map(|()| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Serialize)]
struct InputRecord {
    name: String,
    qubits: usize,
    cnots: usize,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest {
    schema_version: u32,
    tool_version: &'static str,
    command: &'static str,
    inputs: Vec<PathBuf>,
    circuits: Vec<InputRecord>,
    duplicates_skipped: usize,
    gadget_cnots: usize,
    min_repeats: usize,
    max_candidates: Option<usize>,
    time_budget_s: Option<f64>,
    seed: u64,
    jobs: usize,
    subsets_examined: u64,
    candidates_kept: usize,
    classes: usize,
    gadgets_reported: usize,
    truncated: Option<TruncationReason>,
    wall_time_s: f64,
}

fn cmd_mine(a: &MineArgs, quiet: bool) -> Result<i32, CliError> {
    let started = Instant::now();
    if a.gadget_cnots == 0 {
        return Err(CliError::Usage("--gadget-cnots must be at least 1".into()));
    }
    let budget = match a.time_budget {
        Some(s) if !(s >= 0.0 && s.is_finite()) => {
            return Err(CliError::Usage(
                "--time-budget must be a non-negative number".into(),
            ))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let corpus = ingest(&a.input, &IngestOptions::default())?;
    for d in corpus.duplicates() {
        eprintln!(
            "warning: {} duplicates {} and is skipped",
            d.name, d.duplicate_of
        );
    }
    let deadline = budget.map(|b| started + b);
    let (candidates, examined, truncated) = with_jobs(a.jobs, || -> Result<_, CliError> {
        let mut all = Vec::new();
        let mut examined = 0u64;
        let mut truncated = None;
        for circuit in corpus.circuits() {
            let limits = MineLimits {
                max_candidates: a.max_candidates.map(|m| m.saturating_sub(all.len())),
                deadline,
                early_reject: true,
            };
            let out = mine_circuit(&circuit_to_graph(circuit), a.gadget_cnots, &limits)?;
            examined += out.subsets_examined;
            all.extend(out.candidates);
            if out.truncated.is_some() {
                truncated = out.truncated;
                break;
            }
        }
        Ok((all, examined, truncated))
    })??;
    let kept = candidates.len();
    let classes = with_jobs(a.jobs, || group_candidates(candidates))??;
    let gadgets = identify_gadgets(&classes, a.min_repeats);

    fs::create_dir_all(&a.output).map_err(|source| CliError::Io {
        path: a.output.display().to_string(),
        source,
    })?;
    write_file(&a.output.join(REPORT_JSON), &gadget_report_json(&gadgets))?;
    write_file(&a.output.join(REPORT_CSV), &gadget_report_csv(&gadgets))?;
    let manifest = RunManifest {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command: "mine",
        inputs: a.input.clone(),
        circuits: corpus
            .circuits()
            .map(|c| InputRecord {
                name: c.name().to_string(),
                qubits: c.n_qubits(),
                cnots: c.cnot_count(),
                sha256: hex::encode(Sha256::digest(c.to_text().as_bytes())),
            })
            .collect(),
        duplicates_skipped: corpus.duplicates().len(),
        gadget_cnots: a.gadget_cnots,
        min_repeats: a.min_repeats,
        max_candidates: a.max_candidates,
        time_budget_s: a.time_budget,
        seed: a.seed,
        jobs: a.jobs,
        subsets_examined: examined,
        candidates_kept: kept,
        classes: classes.len(),
        gadgets_reported: gadgets.len(),
        truncated,
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_file(&a.output.join(RUN_MANIFEST), &text)?;
    if !quiet {
        println!(
            "{} circuits, {} candidates, {} classes, {} gadgets (N_r > {}){}",
            corpus.len(),
            kept,
            classes.len(),
            gadgets.len(),
            a.min_repeats,
            if truncated.is_some() {
                ", truncated"
            } else {
                ""
            }
        );
    }
    Ok(if truncated.is_some() {
        EXIT_TRUNCATED
    } else {
        EXIT_OK
    })
}

fn cmd_gen(a: &GenArgs, quiet: bool) -> Result<(), CliError> {
    let connectivity = match a.connectivity.as_str() {
        "all" => Connectivity::All,
        "nn" => Connectivity::Nn,
        "nnn" => Connectivity::Nnn,
        path => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })?;
            Connectivity::parse_edges(&text)?
        }
    };
    let cfg = GeneratorConfig {
        n: a.n,
        k: a.k,
        target_d: a.d,
        connectivity,
        max_gates: a.max_gates,
        attempts: a.attempts,
        seed: a.seed,
        method: match a.method {
            MethodArg::Random => Method::Random,
            MethodArg::Hillclimb => Method::Hillclimb,
        },
        count: a.count,
    };
    let corpus = with_jobs(a.jobs, || generate_encoders(&cfg))??;
    corpus.write_dir(&a.output)?;
    if !quiet {
        println!(
            "{} distinct encoders ({} duplicates) written to {}",
            corpus.len(),
            corpus.duplicates().len(),
            a.output.display()
        );
    }
    Ok(())
}

fn cmd_catalog(a: &CatalogArgs) -> Result<(), CliError> {
    let families = match &a.family {
        Some(f) => vec![f.parse::<Family>()?],
        None => Family::ALL.to_vec(),
    };
    let generations: Vec<usize> = match a.generation {
        Some(g) => vec![g],
        None => (1..=MAX_GENERATION).collect(),
    };
    for f in families {
        for &g in &generations {
            let spec = build_gadget(f, g)?;
            let cand = spec.as_candidate();
            println!("# gadget {} (family {}, generation {})", spec.name(), f, g);
            println!("# certificate {}", certificate(&cand.graph)?.digest());
            println!("# graph {}", cand.graph.to_json());
            print!("{}", spec.to_circuit().to_text());
        }
    }
    Ok(())
}

fn cmd_stats(a: &StatsArgs) -> Result<(), CliError> {
    let corpus = ingest(&a.input, &IngestOptions { k: a.k })?;
    let stats = corpus_stats(&corpus)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&stats).expect("stats serialize")
    );
    Ok(())
}

fn cmd_canon(a: &CanonArgs) -> Result<(), CliError> {
    for path in &a.files {
        let circuit = Circuit::read_file(path).map_err(CorpusError::from)?;
        let n = circuit.n_qubits();
        let k = a.k.unwrap_or(n).min(n);
        let prep = match &a.prep {
            Some(p) => p
                .chars()
                .map(|c| {
                    PrepBasis::from_symbol(c)
                        .ok_or_else(|| CliError::Usage(format!("bad prep symbol '{c}'")))
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![PrepBasis::Z; n - k],
        };
        let entry = CorpusEntry::new(circuit, k, prep, Origin::Ingested)?;
        println!("{}  {}", entry.canonical.digest(), path.display());
        if a.verbose {
            print!("{}", entry.canonical);
        }
    }
    Ok(())
}
