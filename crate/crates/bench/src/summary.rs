//! Aggregates over bench records: mean and population standard deviation of
//! `ar_expectation` per (instance, layers).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bench::BenchRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub n: usize,
    pub layers: usize,
    pub runs: usize,
    pub mean: f64,
    pub std: f64,
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Divides by `len`, not `len - 1`.
pub fn population_std(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

/// One row per (instance, layers), ordered by instance size, name, layers.
/// Records are grouped in run order so the sums are reproducible.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, String, usize), Vec<(usize, f64)>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.n, r.instance.clone(), r.layers))
            .or_default()
            .push((r.run, r.ar_expectation));
    }
    groups
        .into_iter()
        .map(|((n, instance, layers), mut runs)| {
            runs.sort_by_key(|&(run, _)| run);
            let ars: Vec<f64> = runs.iter().map(|&(_, ar)| ar).collect();
            SummaryRow {
                instance,
                n,
                layers,
                runs: ars.len(),
                mean: mean(&ars),
                std: population_std(&ars),
            }
        })
        .collect()
}

/// Aligned table: one row per instance, a `mean ± std` column per layer
/// count. Skipped instances are listed underneath.
pub fn format_table(rows: &[SummaryRow], skipped: &[(String, String)]) -> String {
    let mut layers: Vec<usize> = rows.iter().map(|r| r.layers).collect();
    layers.sort_unstable();
    layers.dedup();
    let mut instances: Vec<(usize, &str)> = rows.iter().map(|r| (r.n, r.instance.as_str())).collect();
    instances.dedup();

    let header: Vec<String> = std::iter::once("instance".to_string())
        .chain(layers.iter().map(|p| format!("p={p}")))
        .collect();
    let mut table = vec![header];
    for &(_, name) in &instances {
        let mut line = vec![name.to_string()];
        for &p in &layers {
            let cell = rows
                .iter()
                .find(|r| r.instance == name && r.layers == p)
                .map(|r| format!("{:.4} ± {:.4}", r.mean, r.std))
                .unwrap_or_else(|| "-".into());
            line.push(cell);
        }
        table.push(line);
    }

    let widths: Vec<usize> = (0..table[0].len())
        .map(|c| table.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| {
                let pad = w - cell.chars().count();
                if c == 0 {
                    format!("{cell}{}", " ".repeat(pad))
                } else {
                    format!("{}{cell}", " ".repeat(pad))
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    for (name, reason) in skipped {
        let _ = writeln!(out, "skipped {name}: {reason}");
    }
    out
}

/// Comma-separated rows at full precision.
pub fn format_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("instance,n,layers,runs,mean_ar,std_ar\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.instance, r.n, r.layers, r.runs, r.mean, r.std
        );
    }
    out
}
