//! Batch front end for the graded-superalgebra engine.
//!
//! Subcommands:
//!   verify           machine-check the grading and superalgebra axioms
//!   structure-table  export the bracket coefficient table
//!   codim            exact graded codimensions c_n
//!   exponent         closed-form growth exponent report
//!   estimate         codimensions joined with finite-n exponent brackets
//!
//! Exit codes: 0 success, 1 verification or internal failure, 2 usage
//! error, 3 resource cap exceeded.

mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use pgraded::numeric::format_sig12;
use pgraded::{
    estimate_exponent, verify_prop1, verify_prop2, verify_super_axioms, CheckReport,
    FeasibilityTable, PSuperalgebra, StructureTable, TripleSelection,
};

use config::{resolve_threads, FileConfig};
use output::{csv_field, json_line, write_artifact};

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// A verification run reported at least one failing item.
    Verification(String),
    /// Bad flags or config values.
    Usage(String),
    /// A combinatorial cost cap was exceeded.
    Resource(String),
    /// Everything else (I/O, internal inconsistencies).
    Other(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Resource(m) => write!(f, "{m}"),
            Failure::Other(m) => write!(f, "{m}"),
        }
    }
}

impl From<pgraded::Error> for Failure {
    fn from(e: pgraded::Error) -> Failure {
        match e {
            pgraded::Error::Config(m) => Failure::Usage(m),
            pgraded::Error::Resource(m) => Failure::Resource(m),
            other => Failure::Other(other.to_string()),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pgraded",
    version,
    about = "Exact Pauli-graded superalgebra toolkit"
)]
struct Cli {
    /// Flat `key = value` config file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Artifact format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    fn resolve(
        &self,
        cfg: &FileConfig,
        default: Format,
    ) -> Result<(Option<PathBuf>, Format), Failure> {
        let out = self.out.clone().or_else(|| cfg.get_path("out"));
        let format = match self.format {
            Some(f) => f,
            None => cfg.get::<Format>("format")?.unwrap_or(default),
        };
        Ok((out, format))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run all structural verification passes for one word length.
    Verify {
        /// Word length q (block size t = 2^q), 1..=4.
        #[arg(long)]
        q: Option<u32>,

        /// Random triple count for the Jacobi check on larger algebras.
        #[arg(long)]
        triples: Option<usize>,

        /// Seed for the random triple selection.
        #[arg(long)]
        seed: Option<u64>,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Export the structure-constant table.
    StructureTable {
        /// Word length q, 1..=4.
        #[arg(long)]
        q: Option<u32>,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Compute exact graded codimensions c_1..c_max_n.
    Codim {
        #[command(flatten)]
        size: SizeArgs,

        /// Largest total degree to compute.
        #[arg(long)]
        max_n: Option<u32>,

        /// Worker thread count (env PGRADED_THREADS when absent).
        #[arg(long)]
        threads: Option<usize>,

        /// Fill the elapsed_ms column with measured times.  Off by
        /// default so identical inputs give byte-identical artifacts.
        #[arg(long)]
        timings: bool,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Report the closed-form growth exponent and its certification data.
    Exponent {
        /// Block size t, a power of two >= 2.
        #[arg(long)]
        t: Option<u64>,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Join exact codimensions with finite-n exponent brackets.
    Estimate {
        #[command(flatten)]
        size: SizeArgs,

        /// Largest total degree to compute.
        #[arg(long)]
        max_n: Option<u32>,

        /// Worker thread count (env PGRADED_THREADS when absent).
        #[arg(long)]
        threads: Option<usize>,

        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SizeArgs {
    /// Block size t = 2^q (codimension sweeps support 2 and 4).
    #[arg(long)]
    t: Option<u64>,

    /// Word length q, an alternative to --t.
    #[arg(long)]
    q: Option<u32>,
}

impl SizeArgs {
    fn resolve_q(&self, cfg: &FileConfig) -> Result<u32, Failure> {
        let t = match self.t {
            Some(t) => Some(t),
            None => cfg.get::<u64>("t")?,
        };
        let q = match self.q {
            Some(q) => Some(q),
            None => cfg.get::<u32>("q")?,
        };
        match (t, q) {
            (Some(t), Some(q)) if t != 1u64 << q => {
                Err(Failure::Usage(format!("--t {t} and --q {q} disagree")))
            }
            (Some(t), _) => {
                if t >= 2 && t.is_power_of_two() {
                    Ok(t.trailing_zeros())
                } else {
                    Err(Failure::Usage(format!(
                        "t = {t} is not a power of two >= 2"
                    )))
                }
            }
            (None, Some(q)) => Ok(q),
            (None, None) => Ok(1),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Verify {
            q,
            triples,
            seed,
            output,
        } => {
            let q = match q {
                Some(q) => q,
                None => cfg.get::<u32>("q")?.unwrap_or(1),
            };
            run_verify(q, triples, seed, &output, &cfg)
        }
        Command::StructureTable { q, output } => {
            let q = match q {
                Some(q) => q,
                None => cfg.get::<u32>("q")?.unwrap_or(1),
            };
            run_structure_table(q, &output, &cfg)
        }
        Command::Codim {
            size,
            max_n,
            threads,
            timings,
            output,
        } => {
            let q = size.resolve_q(&cfg)?;
            let max_n = match max_n {
                Some(n) => n,
                None => cfg.get::<u32>("max_n")?.unwrap_or(10),
            };
            let threads = resolve_threads(threads, &cfg)?;
            run_codim(q, max_n, threads, timings, &output, &cfg)
        }
        Command::Exponent { t, output } => {
            let t = match t {
                Some(t) => t,
                None => cfg.get::<u64>("t")?.unwrap_or(2),
            };
            run_exponent(t, &output, &cfg)
        }
        Command::Estimate {
            size,
            max_n,
            threads,
            output,
        } => {
            let q = size.resolve_q(&cfg)?;
            let max_n = match max_n {
                Some(n) => n,
                None => cfg.get::<u32>("max_n")?.unwrap_or(10),
            };
            let threads = resolve_threads(threads, &cfg)?;
            run_estimate(q, max_n, threads, &output, &cfg)
        }
    }
}

fn run_verify(
    q: u32,
    triples: Option<usize>,
    seed: Option<u64>,
    output: &OutputArgs,
    cfg: &FileConfig,
) -> Result<(), Failure> {
    let (out, format) = output.resolve(cfg, Format::Json)?;
    let alg = PSuperalgebra::build(q)?;

    let selection = if alg.dim().pow(3) <= 1_000 {
        TripleSelection::Exhaustive
    } else {
        TripleSelection::Random {
            count: triples.unwrap_or(10_000),
            seed: seed.unwrap_or(0x5eed),
        }
    };

    let reports = vec![
        verify_prop1(q)?,
        verify_prop2(&alg)?,
        verify_super_axioms(&alg, selection)?,
    ];
    let passed = reports.iter().all(|r| r.passed);

    let content = match format {
        Format::Json => json_line(&serde_json::json!({
            "q": q,
            "passed": passed,
            "checks": reports,
        })),
        Format::Csv => {
            let mut s = String::from("check,item,passed,detail\n");
            for report in &reports {
                for item in &report.items {
                    s.push_str(&format!(
                        "{},{},{},{}\n",
                        csv_field(&report.name),
                        csv_field(&item.label),
                        item.passed,
                        csv_field(item.detail.as_deref().unwrap_or("")),
                    ));
                }
            }
            s
        }
    };
    write_artifact(out.as_deref(), &content)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(summarize_failures(&reports)))
    }
}

fn summarize_failures(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .flat_map(|r| {
            r.failures()
                .map(move |i| format!("{}: {}", r.name, i.label))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn run_structure_table(q: u32, output: &OutputArgs, cfg: &FileConfig) -> Result<(), Failure> {
    let (out, format) = output.resolve(cfg, Format::Json)?;
    let alg = PSuperalgebra::build(q)?;
    let table = StructureTable::build(&alg)?;
    let content = match format {
        Format::Json => table.to_json_string(&alg),
        Format::Csv => table.to_csv_string(&alg),
    };
    write_artifact(out.as_deref(), &content)
}

struct CodimRun {
    q: u32,
    max_n: u32,
    rows: Vec<(u32, BigUint, usize, u128)>,
    dp: FeasibilityTable,
}

fn compute_codim(
    q: u32,
    max_n: u32,
    threads: Option<usize>,
    timings: bool,
) -> Result<CodimRun, Failure> {
    let alg = PSuperalgebra::build(q)?;
    let table = StructureTable::build(&alg)?;
    let dp = in_pool(threads, || FeasibilityTable::build(&alg, &table, max_n))??;
    let rows = (1..=max_n)
        .map(|n| {
            let c = dp.graded_codimension(n)?;
            let elapsed = if timings { dp.level_elapsed_ms(n) } else { 0 };
            Ok((n, c, dp.feasible_count(n), elapsed))
        })
        .collect::<Result<Vec<_>, pgraded::Error>>()?;
    Ok(CodimRun { q, max_n, rows, dp })
}

fn run_codim(
    q: u32,
    max_n: u32,
    threads: Option<usize>,
    timings: bool,
    output: &OutputArgs,
    cfg: &FileConfig,
) -> Result<(), Failure> {
    let (out, format) = output.resolve(cfg, Format::Csv)?;
    let run = compute_codim(q, max_n, threads, timings)?;
    let content = match format {
        Format::Csv => {
            let mut s = String::from("n,c_n,feasible_count,elapsed_ms\n");
            for (n, c, feasible, elapsed) in &run.rows {
                s.push_str(&format!("{n},{c},{feasible},{elapsed}\n"));
            }
            s
        }
        Format::Json => {
            // The full feasible multidegree lists stay manageable only for
            // small totals.
            let lists: Vec<serde_json::Value> = (1..=run.max_n.min(8))
                .map(|n| {
                    serde_json::json!({
                        "n": n,
                        "multidegrees": run
                            .dp
                            .feasible_at(n)
                            .iter()
                            .map(|v| v.counts().to_vec())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_line(&serde_json::json!({
                "t": 1u64 << run.q,
                "max_n": run.max_n,
                "rows": run.rows.iter().map(|(n, c, feasible, elapsed)| {
                    serde_json::json!({
                        "n": n,
                        "c_n": c.to_string(),
                        "feasible_count": feasible,
                        "elapsed_ms": elapsed,
                    })
                }).collect::<Vec<_>>(),
                "feasible_multidegrees": lists,
            }))
        }
    };
    write_artifact(out.as_deref(), &content)
}

fn run_exponent(t: u64, output: &OutputArgs, cfg: &FileConfig) -> Result<(), Failure> {
    let (out, format) = output.resolve(cfg, Format::Json)?;
    let report = estimate_exponent(t, &[])?;
    let content = match format {
        Format::Json => json_line(&report.to_json()),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (key, value) in [
                ("t", t.to_string()),
                ("z_star", format_sig12(report.z_star)),
                ("g_at_z_star", format_sig12(report.g_at_z_star)),
                ("g_prime_residual", format_sig12(report.g_prime_residual)),
                ("g_second", format_sig12(report.g_second)),
                ("theoretical", format_sig12(report.theoretical)),
            ] {
                s.push_str(&format!("{key},{value}\n"));
            }
            s
        }
    };
    write_artifact(out.as_deref(), &content)
}

fn run_estimate(
    q: u32,
    max_n: u32,
    threads: Option<usize>,
    output: &OutputArgs,
    cfg: &FileConfig,
) -> Result<(), Failure> {
    let (out, format) = output.resolve(cfg, Format::Json)?;
    let run = compute_codim(q, max_n, threads, false)?;
    let t = 1u64 << run.q;
    let codims: Vec<(u32, BigUint)> = run
        .rows
        .iter()
        .map(|(n, c, _, _)| (*n, c.clone()))
        .collect();
    let report = estimate_exponent(t, &codims)?;

    let content = match format {
        Format::Json => {
            let mut json = report.to_json();
            let estimates = json["estimates"].as_array_mut().expect("estimates array");
            for (entry, (_, c)) in estimates.iter_mut().zip(&codims) {
                entry["c_n"] = serde_json::Value::String(c.to_string());
            }
            json_line(&json)
        }
        Format::Csv => {
            let mut s = String::from("n,c_n,lower_est,root,upper_est\n");
            for (est, (_, c)) in report.estimates.iter().zip(&codims) {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    est.n,
                    c,
                    format_sig12(est.lower),
                    format_sig12(est.root),
                    format_sig12(est.upper),
                ));
            }
            s
        }
    };
    write_artifact(out.as_deref(), &content)
}

/// Runs inside a dedicated rayon pool when a thread count was requested.
fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            if n == 0 {
                return Err(Failure::Usage("thread count must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Other(format!("building thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
