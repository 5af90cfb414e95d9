//! `mmdc` command-line front end.
//!
//! Exit codes: 0 success, 1 usage/parse/validation error, 2 infeasible,
//! 3 oracle budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::error::MmdcError;
use crate::format::{parse_instance, parse_solution, write_instance, write_solution};
use crate::generate::{generate_instance, GenParams};
use crate::graph::ExpandedGraph;
use crate::model::{validate_instance, verify_solution, Semantics};
use crate::oracle::{
    oracle_declared_mmdc, oracle_expanded, OracleBudget, OracleResult, OracleVerdict,
};
use crate::solver::{solve_mmdc_with, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mmdc",
    version,
    about = "Many-to-many matching with demands and capacities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveSemantics {
    /// Verify with exact saturation of the smaller side.
    Expanded,
    /// Verify with saturation, and also report the declared-bounds check.
    DeclaredReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifySemantics {
    Declared,
    Expanded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Expanded,
    Declared,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file and print the solution.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "expanded")]
        semantics: SolveSemantics,
        /// Stream phase events to stderr (also enabled by MMDC_TRACE=1).
        #[arg(long)]
        trace: bool,
        /// Shuffle the root scan order with this seed.
        #[arg(long, value_name = "SEED")]
        seed_order: Option<u64>,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        wmax: u64,
        #[arg(long, default_value_t = 3)]
        capmax: u32,
    },
    /// Time the solver over growing generated instances.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "40,80,160")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 3)]
        capmax: u32,
        #[arg(long, default_value_t = 1000)]
        wmax: u64,
    },
    /// Check a solution file against an instance file.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long, value_enum, default_value = "declared")]
        semantics: VerifySemantics,
    },
    /// Solve a small instance exhaustively.
    Oracle {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "expanded")]
        mode: OracleMode,
        /// Per-pair multiplicity bound for the declared mode (0 = unbounded).
        #[arg(long, default_value_t = 3)]
        pair_cap: u32,
        /// Search nodes before giving up.
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
}

fn trace_from_env() -> bool {
    std::env::var("MMDC_TRACE").is_ok_and(|v| v == "1")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &MmdcError) -> i32 {
    match e {
        MmdcError::Infeasible(_) => EXIT_INFEASIBLE,
        MmdcError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String, MmdcError> {
    fs::read_to_string(path)
        .map_err(|e| MmdcError::Contract(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<crate::model::Instance, MmdcError> {
    parse_instance(&read(path)?)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, MmdcError> {
    let io = |e: std::io::Error| MmdcError::Contract(format!("write failed: {e}"));
    match cmd {
        Command::Solve {
            path,
            semantics,
            trace,
            seed_order,
        } => {
            let inst = load_instance(&path)?;
            let report = validate_instance(&inst);
            if !report.passed() {
                return Err(MmdcError::Rejected(report));
            }
            let tracing = trace || trace_from_env();
            let opts = SolveOptions {
                root_seed: seed_order,
            };
            let mut sink = |ev: &crate::solver::TraceEvent| {
                if tracing {
                    let _ = writeln!(err, "{ev}");
                }
            };
            let sol = solve_mmdc_with(&inst, &opts, &mut sink)?;
            let check = verify_solution(&inst, &sol, Semantics::ExpandedSaturating);
            if !check.passed() {
                return Err(MmdcError::Contract(format!(
                    "solver output failed verification:\n{check}"
                )));
            }
            out.write_all(write_solution(&sol).as_bytes()).map_err(io)?;
            if semantics == SolveSemantics::DeclaredReport {
                let declared = verify_solution(&inst, &sol, Semantics::DeclaredMmdc);
                for line in declared.to_string().lines() {
                    writeln!(out, "# declared: {line}").map_err(io)?;
                }
            }
            if tracing {
                writeln!(
                    err,
                    "event=done elapsed_us={}",
                    sol.stats.elapsed.as_micros()
                )
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen {
            s,
            t,
            seed,
            wmax,
            capmax,
        } => {
            if s == 0 || t == 0 {
                return Err(MmdcError::Contract("--s and --t must be positive".into()));
            }
            let inst = generate_instance(&GenParams {
                s,
                t,
                seed,
                wmax,
                capmax,
            });
            out.write_all(write_instance(&inst).as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            sizes,
            seed,
            reps,
            capmax,
            wmax,
        } => {
            let report = run_bench(&BenchConfig {
                sizes,
                seed,
                reps,
                capmax,
                wmax,
            })?;
            writeln!(out, "{report}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            instance,
            solution,
            semantics,
        } => {
            let inst = load_instance(&instance)?;
            let sol = parse_solution(&read(&solution)?)?;
            let mode = match semantics {
                VerifySemantics::Declared => Semantics::DeclaredMmdc,
                VerifySemantics::Expanded => Semantics::ExpandedSaturating,
            };
            let report = verify_solution(&inst, &sol, mode);
            writeln!(out, "{report}").map_err(io)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_USAGE })
        }
        Command::Oracle {
            path,
            mode,
            pair_cap,
            budget,
        } => {
            let inst = load_instance(&path)?;
            let budget = OracleBudget {
                max_states: budget,
                timeout: Some(Duration::from_secs(600)),
            };
            let result: OracleResult = match mode {
                OracleMode::Expanded => {
                    oracle_expanded(&ExpandedGraph::build_unchecked(&inst), budget)?
                }
                OracleMode::Declared => {
                    oracle_declared_mmdc(&inst, (pair_cap > 0).then_some(pair_cap), budget)?
                }
            };
            writeln!(out, "# explored: {}", result.explored).map_err(io)?;
            match result.verdict {
                OracleVerdict::Infeasible => {
                    writeln!(out, "infeasible").map_err(io)?;
                    Ok(EXIT_INFEASIBLE)
                }
                OracleVerdict::Optimal(sol) => {
                    writeln!(out, "cost {}", sol.cost).map_err(io)?;
                    for ((i, j), m) in &sol.multiplicities {
                        writeln!(out, "{} {} {m}", i + 1, j + 1).map_err(io)?;
                    }
                    for (x, y) in &sol.expanded_edges {
                        writeln!(out, "# edge {x} {y}").map_err(io)?;
                    }
                    Ok(EXIT_OK)
                }
            }
        }
    }
}
