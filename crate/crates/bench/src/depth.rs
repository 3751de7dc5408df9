use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use qaoa_core::circuit::{decompose, depth, Strategy};
use qaoa_core::qaoa::QaoaProblem;
use serde::{Deserialize, Serialize};

use crate::instance::Instance;

/// Placeholder angle; compiled depth does not depend on parameter values.
const PLACEHOLDER_ANGLE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthRow {
    pub instance: String,
    pub n: usize,
    pub edges: usize,
    pub layers: usize,
    pub naive: usize,
    pub scheduled: usize,
}

pub fn compiled_depth(problem: &QaoaProblem, layers: usize, strategy: Strategy) -> Result<usize> {
    let params = vec![PLACEHOLDER_ANGLE; 2 * layers];
    let circuit = problem.ansatz(layers, &params, strategy)?;
    Ok(depth(&decompose(&circuit)))
}

/// Naive and scheduled compiled depth for every (instance, layers), ordered
/// by instance size.
pub fn cmd_depth(instances: &[PathBuf], layers: &[usize]) -> Result<Vec<DepthRow>> {
    if layers.is_empty() {
        bail!("at least one layer count is required");
    }
    let mut loaded = instances
        .iter()
        .map(|p| Instance::load(p))
        .collect::<Result<Vec<_>>>()?;
    loaded.sort_by(|a, b| (a.graph.num_nodes(), &a.name).cmp(&(b.graph.num_nodes(), &b.name)));
    let mut rows = Vec::new();
    for inst in &loaded {
        let problem = QaoaProblem::maxcut(&inst.graph);
        for &p in layers {
            rows.push(DepthRow {
                instance: inst.name.clone(),
                n: inst.graph.num_nodes(),
                edges: inst.graph.num_edges(),
                layers: p,
                naive: compiled_depth(&problem, p, Strategy::Naive)?,
                scheduled: compiled_depth(&problem, p, Strategy::Scheduled)?,
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// `(naive, scheduled)` depth-vs-n slopes at one layer count.
pub fn depth_slopes(rows: &[DepthRow], layers: usize) -> Option<(f64, f64)> {
    let sel: Vec<&DepthRow> = rows.iter().filter(|r| r.layers == layers).collect();
    if sel.len() < 2 || sel.iter().all(|r| r.n == sel[0].n) {
        return None;
    }
    let xs: Vec<f64> = sel.iter().map(|r| r.n as f64).collect();
    let naive: Vec<f64> = sel.iter().map(|r| r.naive as f64).collect();
    let sched: Vec<f64> = sel.iter().map(|r| r.scheduled as f64).collect();
    Some((slope(&xs, &naive), slope(&xs, &sched)))
}

pub fn format_depth_table(rows: &[DepthRow]) -> String {
    let mut out = format!(
        "{:<12} {:>3} {:>5} {:>3} {:>7} {:>9}\n",
        "instance", "n", "edges", "p", "naive", "scheduled"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<12} {:>3} {:>5} {:>3} {:>7} {:>9}",
            r.instance, r.n, r.edges, r.layers, r.naive, r.scheduled
        );
    }
    let mut layers: Vec<usize> = rows.iter().map(|r| r.layers).collect();
    layers.sort_unstable();
    layers.dedup();
    for p in layers {
        if let Some((naive, sched)) = depth_slopes(rows, p) {
            let _ = writeln!(out, "p={p} slope per node: naive {naive:.3}, scheduled {sched:.3}");
        }
    }
    out
}

pub fn format_depth_csv(rows: &[DepthRow]) -> String {
    let mut out = String::from("instance,n,edges,layers,naive,scheduled\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.instance, r.n, r.edges, r.layers, r.naive, r.scheduled
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_line() {
        assert!((slope(&[1.0, 2.0, 3.0], &[5.0, 7.0, 9.0]) - 2.0).abs() < 1e-12);
    }
}
