//! The variational loop: ansatz → simulate → measure → classical update.
//!
//! Parameter vectors are ordered `[γ_1 … γ_p, β_1 … β_p]`. Costs are
//! minimized; for Max-Cut the cost of an assignment is `-cut`, so
//! approximation ratios are `-cost / optimum`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circuit::{
    append_phase_separator, append_transverse_mixer, append_uniform_superposition, check_layer_params, coupling_rounds,
    decompose, depth, gate_counts, Circuit, GateKind, Strategy,
};
use crate::encoding::{maxcut_to_ising, IsingModel};
use crate::error::{Error, Result};
use crate::graph::{bits_from_index, Graph};
use crate::optimizer::{Minimizer, NelderMead};
use crate::rng::{hash64, SeededRng};
use crate::sim::{expectation_diagonal, sample, Counts, Simulator};

/// Stream tag for the initial parameter draw.
const INIT_STREAM: u64 = 0x1A17;
/// Evaluation index used for the post-optimization sample.
pub const FINAL_SAMPLE_INDEX: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum InitialState {
    /// `H` on every qubit.
    #[default]
    UniformSuperposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhaseSeparator {
    /// `exp(-iγC)` of the problem's Ising cost.
    #[default]
    IsingCost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mixer {
    /// `exp(-iβ Σ X_i)`
    #[default]
    TransverseField,
}

/// Cost of a measured assignment; lower is better.
pub type ClassicalCost = Arc<dyn Fn(&[bool]) -> f64 + Send + Sync>;

/// A QAOA instance: cost model plus the four ansatz ingredients.
#[derive(Clone)]
pub struct QaoaProblem {
    ising: IsingModel,
    pub initial_state: InitialState,
    pub phase_separator: PhaseSeparator,
    pub mixer: Mixer,
    classical_cost: Option<ClassicalCost>,
}

impl fmt::Debug for QaoaProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QaoaProblem")
            .field("ising", &self.ising)
            .field("initial_state", &self.initial_state)
            .field("phase_separator", &self.phase_separator)
            .field("mixer", &self.mixer)
            .field("custom_cost", &self.classical_cost.is_some())
            .finish()
    }
}

impl QaoaProblem {
    pub fn new(ising: IsingModel) -> Self {
        Self {
            ising,
            initial_state: InitialState::default(),
            phase_separator: PhaseSeparator::default(),
            mixer: Mixer::default(),
            classical_cost: None,
        }
    }

    pub fn maxcut(g: &Graph) -> Self {
        Self::new(maxcut_to_ising(g))
    }

    /// Replaces the default classical cost (the Ising energy).
    pub fn with_classical_cost(mut self, cost: ClassicalCost) -> Self {
        self.classical_cost = Some(cost);
        self
    }

    pub fn ising(&self) -> &IsingModel {
        &self.ising
    }

    pub fn num_qubits(&self) -> usize {
        self.ising.num_spins()
    }

    pub fn cost_of_index(&self, index: u64) -> f64 {
        match &self.classical_cost {
            None => self.ising.energy_of_index(index),
            Some(f) => f(&bits_from_index(index, self.num_qubits())),
        }
    }

    pub fn ansatz(&self, layers: usize, params: &[f64], strategy: Strategy) -> Result<Circuit> {
        if params.len() != 2 * layers {
            return Err(Error::LengthMismatch {
                expected: 2 * layers,
                actual: params.len(),
            });
        }
        let (gammas, betas) = params.split_at(layers);
        check_layer_params(layers, gammas, betas)?;

        let mut c = Circuit::new(self.num_qubits())?;
        match self.initial_state {
            InitialState::UniformSuperposition => append_uniform_superposition(&mut c),
        }
        let rounds = coupling_rounds(&self.ising, strategy);
        for (&gamma, &beta) in gammas.iter().zip(betas) {
            match self.phase_separator {
                PhaseSeparator::IsingCost => append_phase_separator(&mut c, &self.ising, &rounds, gamma),
            }
            match self.mixer {
                Mixer::TransverseField => append_transverse_mixer(&mut c, beta),
            }
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveMode {
    /// `⟨ψ|C|ψ⟩` computed from the amplitudes.
    Exact,
    /// Mean cost over `shots` measurements.
    Sampled,
}

impl fmt::Display for ObjectiveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveMode::Exact => "exact",
            ObjectiveMode::Sampled => "sampled",
        })
    }
}

impl FromStr for ObjectiveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ObjectiveMode::Exact),
            "sampled" => Ok(ObjectiveMode::Sampled),
            _ => Err(Error::InvalidArgument(format!("unknown objective mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaConfig {
    pub layers: usize,
    pub shots: u64,
    /// Objective evaluations available to the optimizer.
    pub max_evaluations: usize,
    pub mode: ObjectiveMode,
    pub seed: u64,
    pub strategy: Strategy,
    pub simulator: SimulatorLimit,
}

/// Serializable wrapper for the simulator width limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulatorLimit(pub usize);

impl Default for SimulatorLimit {
    fn default() -> Self {
        Self(crate::sim::DEFAULT_MAX_QUBITS)
    }
}

impl Default for QaoaConfig {
    fn default() -> Self {
        Self {
            layers: 1,
            shots: 10_000,
            max_evaluations: 5_000,
            mode: ObjectiveMode::Sampled,
            seed: 0,
            strategy: Strategy::Scheduled,
            simulator: SimulatorLimit::default(),
        }
    }
}

impl QaoaConfig {
    fn validate(&self) -> Result<()> {
        if self.layers < 1 {
            return Err(Error::InvalidArgument("QAOA needs at least one layer".into()));
        }
        if self.shots < 1 {
            return Err(Error::InvalidArgument("at least one shot is required".into()));
        }
        Ok(())
    }

    /// Seed of the shot draw for evaluation number `evaluation`.
    pub fn shot_seed(&self, evaluation: u64) -> u64 {
        hash64(self.seed, evaluation)
    }
}

/// Objective value at `params`. In sampled mode, `evaluation` selects the
/// shot seed via [`QaoaConfig::shot_seed`]; exact mode ignores it.
pub fn objective(problem: &QaoaProblem, config: &QaoaConfig, params: &[f64], evaluation: u64) -> Result<f64> {
    config.validate()?;
    let circuit = problem.ansatz(config.layers, params, config.strategy)?;
    let state = Simulator::new(config.simulator.0).simulate(&circuit)?;
    match config.mode {
        ObjectiveMode::Exact => match problem.classical_cost {
            None => expectation_diagonal(&state, &problem.ising),
            Some(_) => Ok(state
                .probabilities()
                .iter()
                .enumerate()
                .map(|(i, p)| p * problem.cost_of_index(i as u64))
                .sum()),
        },
        ObjectiveMode::Sampled => {
            let counts = sample(&state, config.shots, config.shot_seed(evaluation))?;
            Ok(counts.mean(|idx| problem.cost_of_index(idx)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaResult {
    pub initial_params: Vec<f64>,
    pub best_params: Vec<f64>,
    /// Optimizer's best objective value.
    pub best_objective: f64,
    pub final_counts: Counts,
    /// Shot-weighted mean cost of `final_counts`.
    pub expected_cost: f64,
    /// Lowest cost among the sampled assignments.
    pub best_sampled_cost: f64,
    pub ar_expectation: f64,
    pub ar_best: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Depth of the final ansatz lowered to `{H, RX, RZ, CX}`.
    pub compiled_depth: usize,
    pub gate_counts: BTreeMap<GateKind, usize>,
}

/// Runs the full loop for one seed.
///
/// Initial angles are uniform in `[0, π)`, drawn from a stream derived from
/// `config.seed`. After optimization the best parameters are measured once
/// more with `shots` fresh shots; the approximation ratios come from that
/// sample: `ar_expectation = -mean cost / optimum`,
/// `ar_best = -lowest sampled cost / optimum`.
pub fn run_qaoa(problem: &QaoaProblem, config: &QaoaConfig, optimum: f64) -> Result<QaoaResult> {
    config.validate()?;
    if optimum.is_nan() || optimum <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "optimum must be positive, got {optimum}"
        )));
    }
    let simulator = Simulator::new(config.simulator.0);
    simulator.check_width(problem.num_qubits())?;

    let dim = 2 * config.layers;
    let mut rng = SeededRng::new(hash64(config.seed, INIT_STREAM));
    let initial_params: Vec<f64> = (0..dim).map(|_| rng.uniform(0.0, PI)).collect();

    let mut failure = None;
    let mut evaluation = 0u64;
    let mut f = |params: &[f64]| -> f64 {
        let value = objective(problem, config, params, evaluation);
        evaluation += 1;
        match value {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let optimizer = NelderMead {
        max_evaluations: config.max_evaluations,
        record_trace: false,
        ..NelderMead::default()
    };
    let outcome = optimizer.minimize(&mut f, &initial_params);
    if let Some(e) = failure {
        return Err(e);
    }
    let opt = outcome?;

    let circuit = problem.ansatz(config.layers, &opt.best_params, config.strategy)?;
    let state = simulator.simulate(&circuit)?;
    let final_counts = sample(&state, config.shots, config.shot_seed(FINAL_SAMPLE_INDEX))?;
    let expected_cost = final_counts.mean(|idx| problem.cost_of_index(idx));
    let best_sampled_cost = final_counts
        .outcomes()
        .keys()
        .map(|&idx| problem.cost_of_index(idx))
        .fold(f64::INFINITY, f64::min);

    let compiled = decompose(&circuit);
    Ok(QaoaResult {
        initial_params,
        best_params: opt.best_params,
        best_objective: opt.best_value,
        expected_cost,
        best_sampled_cost,
        ar_expectation: -expected_cost / optimum,
        ar_best: -best_sampled_cost / optimum,
        final_counts,
        evaluations: opt.evaluations,
        converged: opt.converged,
        compiled_depth: depth(&compiled),
        gate_counts: gate_counts(&compiled),
    })
}
