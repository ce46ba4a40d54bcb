//! `sidon`: command-line front end for the `sidon-core` library.
//!
//! Every subcommand prints one JSON document on stdout. Exit codes: 0 on
//! success, 1 on bad input or an unmet precondition, 2 when a resource limit
//! is hit or a solve stops on its time budget, 3 on an internal error.

use std::fs::OpenOptions;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use sidon_core::bound::{bound_given_u, bound_optimal_u, bound_theorem, BoundQuery, BoundReport};
use sidon_core::geometric::{build_family, verify_family};
use sidon_core::sidon::Quadruple;
use sidon_core::singer::{singer_difference_set, translate_family};
use sidon_core::solver::{max_sidon_bb, SolverConfig, DEFAULT_BB_CAP};
use sidon_core::sweep::{append_construction_row, run_sweep, GridSpec, SweepSpec};
use sidon_core::thresholds::{optimize, write_surface_csv, ThresholdDomain};
use sidon_core::two_interval::{best_construction, construct, ConstructionMethod, TwoIntervalInstance};
use sidon_core::{is_sidon, IntegerSet, Interval, IntervalUnion, SidonError, SidonMode};

#[derive(Parser)]
#[command(name = "sidon", version, about = "Sidon sets on unions of integer intervals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a set is Sidon and report the smallest violation.
    Verify {
        #[arg(long)]
        set: IntegerSet,
        /// Only sums of distinct elements must differ.
        #[arg(long)]
        weak: bool,
    },
    /// Singer perfect difference set for a prime.
    Singer {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        translates: bool,
    },
    /// Large Sidon subset of two disjoint intervals.
    Construct {
        #[arg(long)]
        i1: Interval,
        #[arg(long)]
        i2: Interval,
        /// auto, i, ii, iiia, iiib, iiic or i2.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Append a summary row to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Upper bound for Sidon subsets of a union of k intervals.
    Bound(BoundArgs),
    /// Exact maximum Sidon subset.
    Solve {
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        intervals: Option<IntervalUnion>,
        #[arg(long)]
        set: Option<IntegerSet>,
        #[arg(long)]
        timeout_ms: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BB_CAP)]
        cap: usize,
    },
    /// Exponentially spaced family in n blocks, with its verdict.
    Exp {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        base: u64,
        #[arg(long)]
        weak: bool,
    },
    /// Search the case thresholds that maximize the guaranteed ratio.
    OptimizeConstants {
        #[arg(long, default_value_t = 0.001)]
        grid_step: f64,
        /// Write the guarantee surface to this CSV file.
        #[arg(long)]
        surface: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01)]
        surface_step: f64,
    },
    /// Best construction over an (α, β) grid, written as CSV.
    Sweep {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: GridSpec,
        #[arg(long)]
        beta: GridSpec,
        /// Comma-separated method labels; all methods when omitted.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<ConstructionMethod>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long, group = "mode")]
    u: Option<u64>,
    /// Scan every window length and keep the smallest bound.
    #[arg(long, group = "mode")]
    optimize: bool,
    /// Window length chosen by the regime of k (the default).
    #[arg(long, group = "mode")]
    theorem: bool,
    /// Append `n,k,u,bound,regime` to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Output of `exp`.
#[derive(Debug, Serialize, Deserialize)]
struct ExpOutput {
    n: u64,
    base: u64,
    mode: SidonMode,
    set: IntegerSet,
    intervals: IntervalUnion,
    blocks_disjoint: bool,
    verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Quadruple>,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    output: &'a Path,
    rows: usize,
}

enum Failure {
    Lib(SidonError),
    Timeout,
}

impl From<SidonError> for Failure {
    fn from(e: SidonError) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Timeout) => ExitCode::from(2),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                SidonError::Resource(_) => 2,
                SidonError::Internal(_) => 3,
                _ => 1,
            })
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("output types serialize"));
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify { set, weak } => {
            let mode = if weak { SidonMode::Weak } else { SidonMode::Strict };
            emit(&is_sidon(&set, mode));
        }
        Command::Singer { p, translates } => {
            let sys = singer_difference_set(p)?;
            emit(&if translates { translate_family(sys) } else { sys });
        }
        Command::Construct { i1, i2, method, csv } => {
            let inst = TwoIntervalInstance::from_intervals(i1, i2)?;
            let report = match method.as_str() {
                "auto" => best_construction(&inst)?,
                label => construct(&inst, label.parse()?)?,
            };
            if let Some(path) = csv {
                append_construction_row(&path, &inst, &report)?;
            }
            emit(&report);
        }
        Command::Bound(args) => {
            let report = bound(&args)?;
            if let Some(path) = &args.csv {
                append_bound_row(path, &report)?;
            }
            emit(&report);
        }
        Command::Solve { intervals, set, timeout_ms, cap } => {
            let set = match (set, intervals) {
                (Some(s), _) => s,
                (None, Some(u)) => {
                    if u.cardinality() > cap as u64 {
                        return Err(SidonError::resource(format!(
                            "solver is capped at {cap} elements, got {}",
                            u.cardinality()
                        ))
                        .into());
                    }
                    u.to_integer_set()
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let cfg = SolverConfig { cap, timeout: timeout_ms.map(Duration::from_millis) };
            let result = max_sidon_bb(&set, &cfg)?;
            emit(&result);
            if !result.complete {
                eprintln!("error: time budget exhausted, optimum is a lower bound");
                return Err(Failure::Timeout);
            }
        }
        Command::Exp { n, base, weak } => {
            let family = build_family(n, base)?;
            let mode = if weak { SidonMode::Weak } else { SidonMode::Strict };
            let check = verify_family(&family, mode);
            emit(&ExpOutput {
                n,
                base,
                mode,
                set: family.set(),
                intervals: family.union(),
                blocks_disjoint: family.blocks_disjoint(),
                verdict: check.is_sidon,
                witness: check.witness,
            });
        }
        Command::OptimizeConstants { grid_step, surface, surface_step } => {
            let point = optimize(grid_step)?;
            if let Some(path) = surface {
                if !(surface_step > 0.0 && surface_step <= 0.1) {
                    return Err(SidonError::precondition(format!(
                        "surface step must lie in (0, 0.1], got {surface_step}"
                    ))
                    .into());
                }
                write_surface_csv(&path, ThresholdDomain::default(), surface_step)?;
            }
            emit(&point);
        }
        Command::Sweep { n, alpha, beta, methods, out } => {
            let methods = if methods.is_empty() { ConstructionMethod::ALL.to_vec() } else { methods };
            let spec = SweepSpec { n, alpha, beta, methods, output: out };
            let rows = run_sweep(&spec)?;
            emit(&SweepSummary { output: &spec.output, rows: rows.len() });
        }
    }
    Ok(())
}

fn bound(args: &BoundArgs) -> sidon_core::Result<BoundReport> {
    if let Some(u) = args.u {
        Ok(bound_given_u(BoundQuery::new(args.n, args.k, u)?))
    } else if args.optimize {
        bound_optimal_u(args.n, args.k, args.n.saturating_sub(1))
    } else {
        bound_theorem(args.n, args.k)
    }
}

#[derive(Serialize)]
struct BoundRow {
    n: u64,
    k: u64,
    u: u64,
    bound: f64,
    regime: sidon_core::bound::BoundRegime,
}

fn append_bound_row(path: &Path, r: &BoundReport) -> sidon_core::Result<()> {
    let fail = |e: &dyn std::fmt::Display| SidonError::resource(format!("writing {}: {e}", path.display()));
    let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| fail(&e))?;
    let fresh = file.metadata().map(|m| m.len() == 0).unwrap_or(true);
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    w.serialize(BoundRow { n: r.n, k: r.k, u: r.u_used, bound: r.bound, regime: r.regime }).map_err(|e| fail(&e))?;
    w.flush().map_err(|e| fail(&e))
}
