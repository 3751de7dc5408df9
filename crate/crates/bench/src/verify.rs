use std::fmt;
use std::path::Path;

use qaoa_core::encoding::{ising_energy, maxcut_to_ising, maxcut_to_qubo};
use qaoa_core::graph::{bits_from_index, brute_force_optimum, cut_value, naive_optimum, Graph};
use qaoa_core::qaoa::{objective, ObjectiveMode, QaoaConfig, QaoaProblem};
use qaoa_core::rng::SeededRng;

use crate::instance::Instance;

/// Largest instance checked against plain enumeration.
pub const NAIVE_CHECK_NODES: usize = 12;
/// Largest instance whose encodings are checked on every assignment; bigger
/// ones use a fixed random subset.
pub const FULL_ENCODING_NODES: usize = 16;
const ENCODING_SAMPLES: usize = 4096;
/// Largest instance for the statevector zero-angle check.
pub const ZERO_ANGLE_NODES: usize = 22;
const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub instance: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name)
            .collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.instance)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(f, "  {tag} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check {
            name,
            status: Status::Pass,
            detail,
        },
        Err(detail) => Check {
            name,
            status: Status::Fail,
            detail,
        },
    }
}

fn skip(name: &'static str, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail: detail.into(),
    }
}

/// Runs the internal cross-checks on one instance file. Never errors: a file
/// that fails to load yields a failing `load` check and skips the rest.
pub fn cmd_verify(path: &Path) -> VerifyReport {
    let inst = match Instance::load(path) {
        Ok(inst) => inst,
        Err(e) => {
            let mut checks = vec![check("load", Err(format!("{e:#}")))];
            for name in [
                "encoding round trip",
                "ising fields vanish",
                "gray vs naive",
                "zero-angle expectation",
            ] {
                checks.push(skip(name, "instance did not load"));
            }
            return VerifyReport {
                instance: path.display().to_string(),
                checks,
            };
        }
    };
    let g = &inst.graph;
    let checks = vec![
        check("load", Ok(format!("{} nodes, {} edges", g.num_nodes(), g.num_edges()))),
        check("encoding round trip", encoding_round_trip(g)),
        check("ising fields vanish", fields_vanish(g)),
        if g.num_nodes() <= NAIVE_CHECK_NODES {
            check("gray vs naive", gray_vs_naive(g))
        } else {
            skip("gray vs naive", format!("more than {NAIVE_CHECK_NODES} nodes"))
        },
        if g.num_nodes() <= ZERO_ANGLE_NODES {
            check("zero-angle expectation", zero_angle(g))
        } else {
            skip("zero-angle expectation", format!("more than {ZERO_ANGLE_NODES} nodes"))
        },
    ];
    VerifyReport {
        instance: inst.name,
        checks,
    }
}

/// QUBO value, Ising energy and `-cut` agree on every (or a sampled)
/// assignment.
fn encoding_round_trip(g: &Graph) -> Result<String, String> {
    let n = g.num_nodes();
    let qubo = maxcut_to_qubo(g);
    let ising = maxcut_to_ising(g);
    let indices: Vec<u64> = if n <= FULL_ENCODING_NODES {
        (0..1u64 << n).collect()
    } else {
        let mut rng = SeededRng::new(n as u64);
        (0..ENCODING_SAMPLES).map(|_| rng.next_u64() >> (64 - n)).collect()
    };
    for &idx in &indices {
        let x = bits_from_index(idx, n);
        let cut = cut_value(g, &x).map_err(|e| e.to_string())?;
        let f = qubo.evaluate(&x).map_err(|e| e.to_string())?;
        let e = ising_energy(&ising, &x).map_err(|e| e.to_string())?;
        if (f + cut).abs() > TOL || (e + cut).abs() > TOL {
            return Err(format!("assignment {idx:b}: cut {cut}, qubo {f}, ising {e}"));
        }
    }
    Ok(format!("{} assignments agree", indices.len()))
}

fn fields_vanish(g: &Graph) -> Result<String, String> {
    let ising = maxcut_to_ising(g);
    match ising.fields().iter().next() {
        None => Ok(format!("{} couplings, no fields", ising.couplings().len())),
        Some((i, h)) => Err(format!("field {h} on spin {i}")),
    }
}

fn gray_vs_naive(g: &Graph) -> Result<String, String> {
    let gray = brute_force_optimum(g).map_err(|e| e.to_string())?;
    let naive = naive_optimum(g).map_err(|e| e.to_string())?;
    if gray.value == naive.value {
        Ok(format!("optimum {}", gray.value))
    } else {
        Err(format!("gray {} vs naive {}", gray.value, naive.value))
    }
}

/// All-zero angles leave `|+…+⟩`, whose expected cost is `-W/2`.
fn zero_angle(g: &Graph) -> Result<String, String> {
    let config = QaoaConfig {
        mode: ObjectiveMode::Exact,
        ..QaoaConfig::default()
    };
    let v = objective(&QaoaProblem::maxcut(g), &config, &[0.0, 0.0], 0).map_err(|e| e.to_string())?;
    let want = -g.total_weight() / 2.0;
    if (v - want).abs() <= TOL {
        Ok(format!("{v}"))
    } else {
        Err(format!("got {v}, expected {want}"))
    }
}
