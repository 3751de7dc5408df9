use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use qaoa_core::circuit::Strategy;
use qaoa_core::graph::{brute_force_optimum, MAX_EXHAUSTIVE_NODES};
use qaoa_core::qaoa::{run_qaoa, ObjectiveMode, QaoaConfig, QaoaProblem, SimulatorLimit};
use qaoa_core::rng::hash64;
use qaoa_core::sim::DEFAULT_MAX_QUBITS;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::summary::{format_csv, format_table, summarize, SummaryRow};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const TIMINGS_FILE: &str = "timings.jsonl";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const SUMMARY_CSV_FILE: &str = "summary.csv";
pub const OPTIMA_FILE: &str = "optima.json";

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub instances: Vec<PathBuf>,
    pub layers: Vec<usize>,
    pub runs: usize,
    pub shots: u64,
    /// Objective evaluations per run.
    pub budget: usize,
    pub strategy: Strategy,
    pub mode: ObjectiveMode,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            instances: Vec::new(),
            layers: vec![1, 3, 5],
            runs: 5,
            shots: 10_000,
            budget: 5_000,
            strategy: Strategy::Scheduled,
            mode: ObjectiveMode::Sampled,
            seed: 0,
            out: None,
            workers: 0,
        }
    }
}

/// One completed run. Contains nothing time-dependent, so identical
/// invocations produce identical records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub layers: usize,
    pub run: usize,
    pub seed: u64,
    pub ar_expectation: f64,
    pub ar_best: f64,
    pub expected_cost: f64,
    pub best_sampled_cost: f64,
    pub optimum: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub compiled_depth: usize,
    pub gate_counts: BTreeMap<String, usize>,
    pub strategy: Strategy,
    pub mode: ObjectiveMode,
    pub initial_params: Vec<f64>,
    pub best_params: Vec<f64>,
}

/// Wall-clock time of one run, kept apart from the records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub instance: String,
    pub layers: usize,
    pub run: usize,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub timings: Vec<Timing>,
    pub summary: Vec<SummaryRow>,
    /// `(instance, reason)`
    pub skipped: Vec<(String, String)>,
    pub table: String,
}

/// Seed of run `run` at `layers` layers on `instance`.
pub fn run_seed(seed: u64, instance: &Instance, layers: usize, run: usize) -> u64 {
    hash64(hash64(hash64(seed, instance.seed_key()), layers as u64), run as u64)
}

pub fn cmd_bench(opts: &BenchOptions) -> Result<BenchOutcome> {
    if opts.layers.is_empty() {
        bail!("at least one layer count is required");
    }
    if opts.layers.contains(&0) {
        bail!("layer counts must be positive");
    }
    if opts.runs == 0 {
        bail!("at least one run is required");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .context("building worker pool")?;
    pool.install(|| bench_in_pool(opts))
}

fn bench_in_pool(opts: &BenchOptions) -> Result<BenchOutcome> {
    let mut optima = match &opts.out {
        Some(dir) => load_optima(dir)?,
        None => BTreeMap::new(),
    };

    let mut ready = Vec::new();
    let mut skipped = Vec::new();
    for path in &opts.instances {
        let inst = Instance::load(path)?;
        let n = inst.graph.num_nodes();
        let limit = MAX_EXHAUSTIVE_NODES.min(DEFAULT_MAX_QUBITS);
        if n > limit {
            let reason = format!("{n} nodes exceeds the limit of {limit}");
            eprintln!("warning: skipping {}: {reason}", inst.name);
            skipped.push((inst.name, reason));
            continue;
        }
        let optimum = match optima.get(&inst.digest) {
            Some(&v) => v,
            None => {
                let v = brute_force_optimum(&inst.graph)?.value;
                optima.insert(inst.digest.clone(), v);
                v
            }
        };
        if optimum <= 0.0 {
            let reason = "optimum cut is zero".to_string();
            eprintln!("warning: skipping {}: {reason}", inst.name);
            skipped.push((inst.name, reason));
            continue;
        }
        ready.push((inst, optimum));
    }

    let jobs: Vec<(usize, usize, usize)> = (0..ready.len())
        .flat_map(|i| {
            opts.layers
                .iter()
                .flat_map(move |&p| (0..opts.runs).map(move |r| (i, p, r)))
        })
        .collect();
    let results: Vec<(BenchRecord, Timing)> = jobs
        .par_iter()
        .map(|&(i, layers, run)| {
            let (inst, optimum) = &ready[i];
            run_one(opts, inst, *optimum, layers, run)
        })
        .collect::<Result<_>>()?;

    let (mut records, mut timings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    records.sort_by(|a, b| (a.n, &a.instance, a.layers, a.run).cmp(&(b.n, &b.instance, b.layers, b.run)));
    timings.sort_by(|a, b| (&a.instance, a.layers, a.run).cmp(&(&b.instance, b.layers, b.run)));
    let summary = summarize(&records);
    let table = format_table(&summary, &skipped);

    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_jsonl(&dir.join(RECORDS_FILE), &records)?;
        write_jsonl(&dir.join(TIMINGS_FILE), &timings)?;
        std::fs::write(dir.join(SUMMARY_FILE), &table)?;
        std::fs::write(dir.join(SUMMARY_CSV_FILE), format_csv(&summary))?;
        std::fs::write(dir.join(OPTIMA_FILE), serde_json::to_string_pretty(&optima)? + "\n")?;
    }
    Ok(BenchOutcome {
        records,
        timings,
        summary,
        skipped,
        table,
    })
}

fn run_one(
    opts: &BenchOptions,
    inst: &Instance,
    optimum: f64,
    layers: usize,
    run: usize,
) -> Result<(BenchRecord, Timing)> {
    let seed = run_seed(opts.seed, inst, layers, run);
    let config = QaoaConfig {
        layers,
        shots: opts.shots,
        max_evaluations: opts.budget,
        mode: opts.mode,
        seed,
        strategy: opts.strategy,
        simulator: SimulatorLimit::default(),
    };
    let start = Instant::now();
    let res = run_qaoa(&QaoaProblem::maxcut(&inst.graph), &config, optimum)
        .with_context(|| format!("{} p={layers} run {run}", inst.name))?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let record = BenchRecord {
        instance: inst.name.clone(),
        n: inst.graph.num_nodes(),
        layers,
        run,
        seed,
        ar_expectation: res.ar_expectation,
        ar_best: res.ar_best,
        expected_cost: res.expected_cost,
        best_sampled_cost: res.best_sampled_cost,
        optimum,
        evaluations: res.evaluations,
        converged: res.converged,
        compiled_depth: res.compiled_depth,
        gate_counts: res.gate_counts.iter().map(|(k, &v)| (k.to_string(), v)).collect(),
        strategy: opts.strategy,
        mode: opts.mode,
        initial_params: res.initial_params,
        best_params: res.best_params,
    };
    let timing = Timing {
        instance: inst.name.clone(),
        layers,
        run,
        wall_time_s,
    };
    Ok((record, timing))
}

fn load_optima(dir: &Path) -> Result<BTreeMap<String, f64>> {
    let path = dir.join(OPTIMA_FILE);
    if !path.exists() {
        return Ok(BTreeMap::new());
    }
    let text = std::fs::read_to_string(&path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

/// Reads a records file written by [`cmd_bench`].
pub fn read_records(path: &Path) -> Result<Vec<BenchRecord>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}
