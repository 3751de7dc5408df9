//! Derivative-free minimization of the variational parameters.
//!
//! [`NelderMead`] is the built-in backend: reflection 1, expansion 2,
//! contraction 0.5, shrink 0.5, initial simplex `x0` plus a fixed step along
//! each coordinate. The budget counts objective evaluations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// `(evaluation index, best value so far)` after every evaluation, when
    /// tracing is enabled.
    pub trace: Vec<(usize, f64)>,
}

/// A minimization backend.
pub trait Minimizer {
    fn minimize(&self, f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64]) -> Result<OptResult>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NelderMead {
    pub max_evaluations: usize,
    /// Stop once every vertex lies within this max-norm distance of the best.
    pub xtol: f64,
    /// Stop once the simplex values span at most this much.
    pub ftol: f64,
    pub initial_step: f64,
    pub record_trace: bool,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_evaluations: 5000,
            xtol: 1e-6,
            ftol: 1e-12,
            initial_step: 0.1,
            record_trace: true,
        }
    }
}

impl NelderMead {
    pub fn with_budget(max_evaluations: usize) -> Self {
        Self {
            max_evaluations,
            ..Self::default()
        }
    }
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Counts evaluations, enforces the budget, tracks the best point seen.
struct Tracker<'a> {
    f: &'a mut dyn FnMut(&[f64]) -> f64,
    budget: usize,
    evaluations: usize,
    best: Option<(Vec<f64>, f64)>,
    trace: Option<Vec<(usize, f64)>>,
}

impl Tracker<'_> {
    /// `Ok(None)` once the budget is spent.
    fn eval(&mut self, x: &[f64]) -> Result<Option<f64>> {
        if self.evaluations >= self.budget {
            return Ok(None);
        }
        let value = (self.f)(x);
        self.evaluations += 1;
        if !value.is_finite() {
            return Err(Error::NonFiniteObjective {
                point: x.to_vec(),
                value,
            });
        }
        if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
            self.best = Some((x.to_vec(), value));
        }
        if let Some(trace) = &mut self.trace {
            let best = self.best.as_ref().expect("just set").1;
            trace.push((self.evaluations - 1, best));
        }
        Ok(Some(value))
    }
}

impl Minimizer for NelderMead {
    fn minimize(&self, f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64]) -> Result<OptResult> {
        let dim = x0.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("cannot minimize over zero parameters".into()));
        }
        if self.max_evaluations < dim + 2 {
            return Err(Error::InvalidArgument(format!(
                "budget {} is below the minimum {} for {dim} parameters",
                self.max_evaluations,
                dim + 2
            )));
        }
        let mut t = Tracker {
            f,
            budget: self.max_evaluations,
            evaluations: 0,
            best: None,
            trace: self.record_trace.then(Vec::new),
        };
        let converged = self.run(&mut t, x0)?;
        let (best_params, best_value) = t.best.expect("at least one evaluation");
        Ok(OptResult {
            best_params,
            best_value,
            evaluations: t.evaluations,
            converged,
            trace: t.trace.unwrap_or_default(),
        })
    }
}

/// Bails out of `run` with "not converged" when the budget runs dry.
macro_rules! eval_or_stop {
    ($t:expr, $x:expr) => {
        match $t.eval($x)? {
            Some(v) => v,
            None => return Ok(false),
        }
    };
}

impl NelderMead {
    fn run(&self, t: &mut Tracker<'_>, x0: &[f64]) -> Result<bool> {
        let dim = x0.len();
        let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
        for i in 0..dim {
            let mut v = x0.to_vec();
            v[i] += self.initial_step;
            simplex.push(v);
        }
        let mut values = Vec::with_capacity(dim + 1);
        for v in &simplex {
            values.push(eval_or_stop!(t, v));
        }

        loop {
            // order vertices best → worst; stable sort keeps ties in place
            let mut order: Vec<usize> = (0..=dim).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[dim] - values[0];
            let size = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if spread <= self.ftol || size <= self.xtol {
                return Ok(true);
            }

            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
                .collect();
            let along = |coef: f64, from: &[f64]| -> Vec<f64> {
                centroid.iter().zip(from).map(|(c, x)| c + coef * (c - x)).collect()
            };

            let reflected = along(REFLECT, &simplex[dim]);
            let fr = eval_or_stop!(t, &reflected);

            if fr < values[0] {
                let expanded = along(EXPAND, &simplex[dim]);
                let fe = eval_or_stop!(t, &expanded);
                if fe < fr {
                    simplex[dim] = expanded;
                    values[dim] = fe;
                } else {
                    simplex[dim] = reflected;
                    values[dim] = fr;
                }
                continue;
            }
            if fr < values[dim - 1] {
                simplex[dim] = reflected;
                values[dim] = fr;
                continue;
            }

            // outside contraction toward the reflected point when it beat the
            // worst vertex, inside contraction toward the worst otherwise
            let (contracted, threshold) = if fr < values[dim] {
                (along(-CONTRACT, &reflected), fr)
            } else {
                (along(-CONTRACT, &simplex[dim]), values[dim])
            };
            let fc = eval_or_stop!(t, &contracted);
            if fc <= threshold {
                simplex[dim] = contracted;
                values[dim] = fc;
                continue;
            }

            for i in 1..=dim {
                let shrunk: Vec<f64> = simplex[0]
                    .iter()
                    .zip(&simplex[i])
                    .map(|(b, x)| b + SHRINK * (x - b))
                    .collect();
                values[i] = eval_or_stop!(t, &shrunk);
                simplex[i] = shrunk;
            }
        }
    }
}

/// Minimizes with the default Nelder–Mead backend.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], config: &NelderMead) -> Result<OptResult> {
    config.minimize(&mut f, x0)
}
