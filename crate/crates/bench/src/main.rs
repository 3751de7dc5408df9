use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qaoa_bench::depth::{format_depth_csv, format_depth_table};
use qaoa_bench::{cmd_bench, cmd_depth, cmd_generate, cmd_verify, BenchOptions, DEFAULT_SIZES};
use qaoa_core::circuit::Strategy;
use qaoa_core::qaoa::ObjectiveMode;

#[derive(Parser)]
#[command(name = "qaoa-bench", version, about = "Max-Cut QAOA benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write random Max-Cut instances as MC_<n>.txt.
    Generate {
        /// Node counts, comma separated [default: 8,10,12,14..=25]
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Probability that each node pair is an edge.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "instances")]
        out: PathBuf,
    },
    /// Run QAOA on instances and report approximation ratios.
    Bench {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        /// Layer counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
        layers: Vec<usize>,
        /// Independent seeded runs per (instance, layers).
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Measurements per objective evaluation and for the final sample.
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        /// Optimizer budget, counted in objective evaluations.
        #[arg(long, default_value_t = 5_000)]
        budget: usize,
        /// Coupling layout of the phase separator: naive or scheduled.
        #[arg(long, default_value_t = Strategy::Scheduled)]
        strategy: Strategy,
        /// Objective: sampled (shot mean) or exact (statevector expectation).
        #[arg(long, default_value_t = ObjectiveMode::Sampled)]
        mode: ObjectiveMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for records.jsonl, timings.jsonl, summary.txt/.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads [default: all cores]
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Compare compiled depth of the naive and scheduled layouts.
    Depth {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
        layers: Vec<usize>,
        /// Write the table as CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check encodings, optimum and zero-angle expectation.
    Verify {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            sizes,
            density,
            seed,
            out,
        } => {
            let sizes = if sizes.is_empty() {
                DEFAULT_SIZES.to_vec()
            } else {
                sizes
            };
            for path in cmd_generate(&sizes, density, seed, &out)? {
                println!("{}", path.display());
            }
        }
        Command::Bench {
            instances,
            layers,
            runs,
            shots,
            budget,
            strategy,
            mode,
            seed,
            out,
            workers,
        } => {
            let outcome = cmd_bench(&BenchOptions {
                instances,
                layers,
                runs,
                shots,
                budget,
                strategy,
                mode,
                seed,
                out,
                workers,
            })?;
            print!("{}", outcome.table);
        }
        Command::Depth { instances, layers, out } => {
            let rows = cmd_depth(&instances, &layers)?;
            print!("{}", format_depth_table(&rows));
            if let Some(path) = out {
                std::fs::write(&path, format_depth_csv(&rows))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Verify { instances } => {
            let mut ok = true;
            for path in &instances {
                let report = cmd_verify(path);
                print!("{report}");
                ok &= report.passed();
            }
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
