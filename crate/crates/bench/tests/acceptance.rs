//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line; exits non-zero if any fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use qaoa_bench::bench::{BenchOptions, RECORDS_FILE};
use qaoa_bench::depth::{compiled_depth, depth_slopes, DepthRow};
use qaoa_bench::{cmd_bench, cmd_generate, DEFAULT_SIZES};
use qaoa_core::circuit::{Circuit, Gate, Strategy};
use qaoa_core::encoding::{ising_energy, maxcut_to_ising};
use qaoa_core::graph::{
    bits_from_index, brute_force_optimum, cut_value, generate_random_graph, load_graph, naive_optimum, Graph,
};
use qaoa_core::qaoa::{objective, run_qaoa, ObjectiveMode, QaoaConfig, QaoaProblem};
use qaoa_core::rng::SeededRng;
use qaoa_core::sim::{sample, simulate};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("simulator matches dense oracle", simulator_oracle),
        ("encoding exactness", encoding_exactness),
        ("single-edge p=1 exactness", single_edge_exactness),
        ("zero-angle invariant", zero_angle_invariant),
        ("brute-force oracle", brute_force_oracle),
        ("MC_8 approximation ratio band", ratio_band),
        ("scheduled depth grows slower", depth_mechanism),
        ("depth linear in layers", depth_linearity),
        ("sampling statistics", sampling_statistics),
        ("replay determinism", replay_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("FAIL {:>2}. {name}: {detail} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_circuit(rng: &mut SeededRng) -> Circuit {
    let n = 1 + (rng.next_u64() % 4) as usize;
    let mut c = Circuit::new(n).unwrap();
    let len = 1 + rng.next_u64() % 30;
    for _ in 0..len {
        let q = (rng.next_u64() % n as u64) as usize;
        // a second qubit distinct from q when n > 1
        let r = (q + 1 + (rng.next_u64() % (n as u64 - 1).max(1)) as usize) % n;
        let t = rng.uniform(-2.0 * PI, 2.0 * PI);
        let gate = match rng.next_u64() % 5 {
            0 => Gate::H(q),
            1 => Gate::Rx(q, t),
            2 => Gate::Rz(q, t),
            3 if n > 1 => Gate::Rzz(q, r, t),
            4 if n > 1 => Gate::Cx(q, r),
            _ => Gate::H(q),
        };
        c.push(gate).unwrap();
    }
    c
}

fn simulator_oracle() -> Outcome {
    let mut rng = SeededRng::new(1);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let c = random_circuit(&mut rng);
        let got = simulate(&c).map_err(|e| e.to_string())?;
        let want = oracle::circuit_state(&c);
        let err = got
            .amplitudes()
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        ensure(err < 1e-10, || format!("circuit {k}: max amplitude error {err:e}"))?;
    }
    Ok(format!("50 circuits, max amplitude error {worst:.1e}"))
}

fn encoding_exactness() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..20u64 {
        let n = 2 + (k % 9) as usize;
        let g = generate_random_graph(n, 0.3 + 0.035 * k as f64, 100 + k).map_err(|e| e.to_string())?;
        let m = maxcut_to_ising(&g);
        for idx in 0..1u64 << n {
            let x = bits_from_index(idx, n);
            let diff = (ising_energy(&m, &x).unwrap() + cut_value(&g, &x).unwrap()).abs();
            worst = worst.max(diff);
            ensure(diff <= 1e-12, || {
                format!("graph {k}, assignment {idx}: off by {diff:e}")
            })?;
        }
    }
    Ok(format!("20 graphs, every assignment, max deviation {worst:.1e}"))
}

fn exact(layers: usize, seed: u64) -> QaoaConfig {
    QaoaConfig {
        layers,
        mode: ObjectiveMode::Exact,
        seed,
        ..QaoaConfig::default()
    }
}

fn single_edge_exactness() -> Outcome {
    let g = Graph::unweighted(2, [(0, 1)]).unwrap();
    let problem = QaoaProblem::maxcut(&g);
    let config = exact(1, 0);
    let mut best = f64::NEG_INFINITY;
    let steps = (PI / 0.01) as usize;
    for i in 0..=steps {
        for j in 0..=steps {
            let cut = -objective(&problem, &config, &[i as f64 * 0.01, j as f64 * 0.01], 0).unwrap();
            best = best.max(cut);
        }
    }
    ensure(best >= 1.0 - 1e-4, || format!("grid maximum expected cut {best}"))?;
    let ars: Vec<f64> = (0..5)
        .map(|seed| run_qaoa(&problem, &exact(1, seed), 1.0).map(|r| r.ar_expectation))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let hits = ars.iter().filter(|&&ar| ar >= 0.999).count();
    ensure(hits >= 4, || format!("{hits}/5 runs reached 0.999: {ars:?}"))?;
    Ok(format!("grid maximum {best:.6}, {hits}/5 runs with ar >= 0.999"))
}

fn benchmark_instances(dir: &std::path::Path) -> Result<Vec<PathBuf>, String> {
    cmd_generate(&DEFAULT_SIZES, 0.5, 0, dir).map_err(|e| format!("{e:#}"))
}

fn zero_angle_invariant() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for path in benchmark_instances(dir.path())? {
        let g = load_graph(&path).map_err(|e| e.to_string())?;
        let v = objective(&QaoaProblem::maxcut(&g), &exact(1, 0), &[0.0, 0.0], 0).map_err(|e| e.to_string())?;
        let want = -(g.num_edges() as f64) / 2.0;
        // f64 cannot represent the |+…+⟩ probabilities 2^-n·(√2)^-2n round trip
        // exactly; agreement is to rounding.
        let diff = (v - want).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-9, || format!("{}: {v} vs {want}", path.display()))?;
    }
    Ok(format!("15 instances (n = 8..25), max deviation {worst:.1e}"))
}

fn brute_force_oracle() -> Outcome {
    for k in 0..20u64 {
        let n = 2 + (k % 11) as usize;
        let g = generate_random_graph(n, 0.5, 200 + k).map_err(|e| e.to_string())?;
        let (gray, naive) = (brute_force_optimum(&g).unwrap(), naive_optimum(&g).unwrap());
        ensure(gray.value == naive.value, || {
            format!("graph {k}: gray {} vs naive {}", gray.value, naive.value)
        })?;
        ensure(cut_value(&g, &gray.assignment).unwrap() == gray.value, || {
            format!("graph {k}: witness mismatch")
        })?;
    }
    let g = generate_random_graph(20, 0.5, 0).unwrap();
    let start = Instant::now();
    let best = brute_force_optimum(&g).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("n=20 took {secs:.1}s"))?;
    Ok(format!("20 graphs agree; n=20 optimum {} in {secs:.2}s", best.value))
}

fn mc8_band(dir: &std::path::Path, seed: u64) -> Result<Vec<(usize, f64)>, String> {
    let inst = cmd_generate(&[8], 0.5, seed, dir).map_err(|e| format!("{e:#}"))?;
    let outcome = cmd_bench(&BenchOptions {
        instances: inst,
        ..BenchOptions::default()
    })
    .map_err(|e| format!("{e:#}"))?;
    Ok(outcome.summary.iter().map(|r| (r.layers, r.mean)).collect())
}

fn ratio_band() -> Outcome {
    let in_band = |m: f64| (0.65..=0.95).contains(&m);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let means = mc8_band(dir.path(), 0)?;
    let shown: Vec<String> = means.iter().map(|(p, m)| format!("p={p} {m:.3}")).collect();

    // Context only: the same protocol on other generator seeds.
    let mut surveyed = 0;
    for seed in 1..10 {
        let d = tempfile::tempdir().map_err(|e| e.to_string())?;
        if mc8_band(d.path(), seed)?.iter().all(|&(_, m)| in_band(m)) {
            surveyed += 1;
        }
    }
    let context = format!("instance seeds 1..=9 fully in band: {surveyed}/9");

    if means.iter().all(|&(_, m)| in_band(m)) {
        Ok(format!("{}; {context}", shown.join(", ")))
    } else {
        Err(format!("means {} outside [0.65, 0.95]; {context}", shown.join(", ")))
    }
}

fn depth_mechanism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = (8..=20).collect();
    let paths = cmd_generate(&sizes, 0.5, 0, dir.path()).map_err(|e| format!("{e:#}"))?;
    let mut rows = Vec::new();
    for path in &paths {
        let g = load_graph(path).unwrap();
        let problem = QaoaProblem::maxcut(&g);
        let row = DepthRow {
            instance: path.display().to_string(),
            n: g.num_nodes(),
            edges: g.num_edges(),
            layers: 5,
            naive: compiled_depth(&problem, 5, Strategy::Naive).unwrap(),
            scheduled: compiled_depth(&problem, 5, Strategy::Scheduled).unwrap(),
        };
        if g.has_disjoint_edges() {
            ensure(row.scheduled < row.naive, || {
                format!("n={}: scheduled {} vs naive {}", row.n, row.scheduled, row.naive)
            })?;
        }
        rows.push(row);
    }
    let (naive, sched) = depth_slopes(&rows, 5).ok_or("no slope")?;
    ensure(sched < naive, || format!("slopes: scheduled {sched} vs naive {naive}"))?;
    Ok(format!(
        "13 instances; slope per node naive {naive:.2}, scheduled {sched:.2}"
    ))
}

fn depth_linearity() -> Outcome {
    for k in 0..10u64 {
        let g = generate_random_graph(4 + k as usize, 0.5, 300 + k).unwrap();
        let problem = QaoaProblem::maxcut(&g);
        for strategy in Strategy::ALL {
            let d1 = compiled_depth(&problem, 1, strategy).unwrap();
            for p in [3, 5] {
                let dp = compiled_depth(&problem, p, strategy).unwrap();
                ensure(dp == 1 + p * (d1 - 1), || {
                    format!("instance {k}, {strategy}: depth({p}) = {dp}, depth(1) = {d1}")
                })?;
            }
        }
    }
    Ok("10 instances, p in {1,3,5}, both strategies".into())
}

fn sampling_statistics() -> Outcome {
    let c = Circuit::from_gates(
        3,
        [
            Gate::Rx(0, 1.1),
            Gate::Rx(1, 2.3),
            Gate::Rx(2, 0.7),
            Gate::Cx(0, 1),
            Gate::Rx(1, 0.5),
            Gate::Rz(2, 0.4),
            Gate::Cx(2, 0),
        ],
    )
    .unwrap();
    let state = simulate(&c).unwrap();
    let probs = state.probabilities();
    let shots = 100_000;
    let counts = sample(&state, shots, 42).unwrap();
    let worst = (0..8u64)
        .map(|i| (counts.get(i) as f64 / shots as f64 - probs[i as usize]).abs())
        .fold(0.0, f64::max);
    ensure(worst < 0.01, || format!("max |freq - prob| = {worst}"))?;
    ensure(probs.iter().all(|&p| p > 1e-4), || {
        "fixed state should have full support".into()
    })?;
    Ok(format!("max |freq - prob| = {worst:.4}"))
}

fn replay_determinism() -> Outcome {
    let inst_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let inst = cmd_generate(&[6, 8], 0.5, 7, inst_dir.path()).map_err(|e| format!("{e:#}"))?;
    let run = || -> Result<(Vec<u8>, usize), String> {
        let out = tempfile::tempdir().map_err(|e| e.to_string())?;
        let outcome = cmd_bench(&BenchOptions {
            instances: inst.clone(),
            layers: vec![1, 2],
            runs: 3,
            shots: 2_000,
            budget: 300,
            out: Some(out.path().to_path_buf()),
            ..BenchOptions::default()
        })
        .map_err(|e| format!("{e:#}"))?;
        let bytes = std::fs::read(out.path().join(RECORDS_FILE)).map_err(|e| e.to_string())?;
        Ok((bytes, outcome.records.len()))
    };
    let (a, n) = run()?;
    let (b, _) = run()?;
    ensure(n == 12, || format!("expected 12 records, got {n}"))?;
    ensure(a == b, || "records files differ".into())?;
    Ok(format!("{n} records, {} bytes, identical", a.len()))
}
