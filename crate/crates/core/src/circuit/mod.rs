//! Gate-level circuits: QAOA ansatz construction, lowering to the
//! `{H, RX, RZ, CX}` basis, and depth / gate-count metrics.
//!
//! Rotation conventions: `RX(θ) = exp(-iθX/2)`, `RZ(θ) = exp(-iθZ/2)`,
//! `RZZ(θ) = exp(-iθ Z⊗Z/2)`. Global phases are never tracked.
//!
//! [`Gate::Barrier`] is an identity instruction spanning every qubit. It has
//! no effect on the state; for [`depth`] it forces every later gate to start
//! after every earlier one. The ansatz builder uses barriers to mark its
//! layer blocks and, for [`Strategy::Naive`], to serialize the two-qubit
//! cost terms.

mod coloring;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::encoding::IsingModel;
use crate::error::{Error, Result};

pub use coloring::{color_count, edge_coloring};
pub use text::{export_circuit_text, parse_circuit_text};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    Rx(usize, f64),
    Rz(usize, f64),
    Rzz(usize, usize, f64),
    /// `Cx(control, target)`
    Cx(usize, usize),
    Barrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Rx,
    Rz,
    Rzz,
    Cx,
    Barrier,
}

impl GateKind {
    pub const UNITARY: [GateKind; 5] = [GateKind::H, GateKind::Rx, GateKind::Rz, GateKind::Rzz, GateKind::Cx];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::Rx => "RX",
            GateKind::Rz => "RZ",
            GateKind::Rzz => "RZZ",
            GateKind::Cx => "CX",
            GateKind::Barrier => "BARRIER",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => GateKind::H,
            "RX" => GateKind::Rx,
            "RZ" => GateKind::Rz,
            "RZZ" => GateKind::Rzz,
            "CX" => GateKind::Cx,
            "BARRIER" => GateKind::Barrier,
            _ => return Err(Error::InvalidArgument(format!("unknown gate kind `{s}`"))),
        })
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Rzz(..) => GateKind::Rzz,
            Gate::Cx(..) => GateKind::Cx,
            Gate::Barrier => GateKind::Barrier,
        }
    }

    /// Qubits the gate acts on. Empty for barriers.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Rz(q, _) => vec![q],
            Gate::Rzz(a, b, _) | Gate::Cx(a, b) => vec![a, b],
            Gate::Barrier => vec![],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, t) | Gate::Rz(_, t) | Gate::Rzz(_, _, t) => Some(t),
            _ => None,
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::InvalidArgument(format!(
                "{} on qubit {q} outside a {num_qubits}-qubit circuit",
                self.kind()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidArgument(format!(
                "{} needs two distinct qubits, got {}",
                self.kind(),
                qubits[0]
            )));
        }
        if self.angle().is_some_and(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument(format!("{} with non-finite angle", self.kind())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidArgument("circuit needs at least one qubit".into()));
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Self::new(num_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Gates with barriers filtered out.
    pub fn unitary_gates(&self) -> impl Iterator<Item = &Gate> {
        self.gates.iter().filter(|g| **g != Gate::Barrier)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    // Builders used by the ansatz; indices were validated by the caller.
    fn emit(&mut self, gate: Gate) {
        debug_assert!(gate.validate(self.num_qubits).is_ok());
        self.gates.push(gate);
    }
}

/// How the two-qubit cost terms of a phase separator are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// One RZZ at a time, in coupling order, each followed by a barrier.
    Naive,
    /// RZZ gates grouped into rounds of disjoint qubit pairs by edge
    /// coloring, with a barrier after each round.
    Scheduled,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Naive, Strategy::Scheduled];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Naive => "naive",
            Strategy::Scheduled => "scheduled",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "scheduled" => Ok(Strategy::Scheduled),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        }
    }
}

/// Rounds of mutually disjoint couplings `(i, j, J_ij)`.
pub fn coupling_rounds(model: &IsingModel, strategy: Strategy) -> Vec<Vec<(usize, usize, f64)>> {
    let terms: Vec<(usize, usize, f64)> = model.couplings().iter().map(|(&(i, j), &c)| (i, j, c)).collect();
    match strategy {
        Strategy::Naive => terms.into_iter().map(|t| vec![t]).collect(),
        Strategy::Scheduled => {
            let pairs: Vec<(usize, usize)> = terms.iter().map(|&(i, j, _)| (i, j)).collect();
            let colors = edge_coloring(model.num_spins(), &pairs);
            let order = coloring::degree_order(model.num_spins(), &pairs);
            let mut rounds = vec![Vec::new(); color_count(&colors)];
            for idx in order {
                rounds[colors[idx]].push(terms[idx]);
            }
            rounds
        }
    }
}

/// Hadamard on every qubit, then a barrier.
pub fn append_uniform_superposition(c: &mut Circuit) {
    for q in 0..c.num_qubits {
        c.emit(Gate::H(q));
    }
    c.emit(Gate::Barrier);
}

/// `exp(-iγC)` for the diagonal cost `C` of `model`, dropping the offset's
/// global phase: `RZ(2γh_i)` per field, then `RZZ(2γJ_ij)` per coupling laid
/// out according to `rounds` (see [`coupling_rounds`]).
pub fn append_phase_separator(c: &mut Circuit, model: &IsingModel, rounds: &[Vec<(usize, usize, f64)>], gamma: f64) {
    if !model.fields().is_empty() {
        for (&i, &h) in model.fields() {
            c.emit(Gate::Rz(i, 2.0 * gamma * h));
        }
        c.emit(Gate::Barrier);
    }
    for round in rounds {
        for &(i, j, coupling) in round {
            c.emit(Gate::Rzz(i, j, 2.0 * gamma * coupling));
        }
        c.emit(Gate::Barrier);
    }
}

/// `exp(-iβ Σ X_i)` as `RX(2β)` on every qubit, then a barrier.
pub fn append_transverse_mixer(c: &mut Circuit, beta: f64) {
    for q in 0..c.num_qubits {
        c.emit(Gate::Rx(q, 2.0 * beta));
    }
    c.emit(Gate::Barrier);
}

/// Standard QAOA ansatz: uniform superposition, then `layers` blocks of
/// phase separator and transverse-field mixer.
pub fn build_qaoa_ansatz(
    model: &IsingModel,
    layers: usize,
    gammas: &[f64],
    betas: &[f64],
    strategy: Strategy,
) -> Result<Circuit> {
    check_layer_params(layers, gammas, betas)?;
    let mut c = Circuit::new(model.num_spins())?;
    append_uniform_superposition(&mut c);
    let rounds = coupling_rounds(model, strategy);
    for (&gamma, &beta) in gammas.iter().zip(betas) {
        append_phase_separator(&mut c, model, &rounds, gamma);
        append_transverse_mixer(&mut c, beta);
    }
    Ok(c)
}

pub(crate) fn check_layer_params(layers: usize, gammas: &[f64], betas: &[f64]) -> Result<()> {
    if layers < 1 {
        return Err(Error::InvalidArgument("QAOA needs at least one layer".into()));
    }
    for params in [gammas, betas] {
        if params.len() != layers {
            return Err(Error::LengthMismatch {
                expected: layers,
                actual: params.len(),
            });
        }
    }
    Ok(())
}

/// Lowers to `{H, RX, RZ, CX}`: `RZZ(q, r, θ) → CX(q, r) RZ(r, θ) CX(q, r)`.
/// Barriers are kept.
pub fn decompose(c: &Circuit) -> Circuit {
    let mut out = Circuit {
        num_qubits: c.num_qubits,
        gates: Vec::with_capacity(c.gates.len()),
    };
    for &g in &c.gates {
        match g {
            Gate::Rzz(q, r, theta) => {
                out.gates.push(Gate::Cx(q, r));
                out.gates.push(Gate::Rz(r, theta));
                out.gates.push(Gate::Cx(q, r));
            }
            other => out.gates.push(other),
        }
    }
    out
}

/// Number of ASAP layers: each gate starts one layer after the latest gate
/// sharing one of its qubits, and after the latest barrier. Empty circuit: 0.
pub fn depth(c: &Circuit) -> usize {
    let mut front = vec![0usize; c.num_qubits];
    let mut floor = 0;
    for g in &c.gates {
        match *g {
            Gate::Barrier => {
                floor = front.iter().copied().max().unwrap_or(0);
            }
            _ => {
                let qubits = g.qubits();
                let layer = qubits.iter().map(|&q| front[q]).max().unwrap_or(0).max(floor) + 1;
                for q in qubits {
                    front[q] = layer;
                }
            }
        }
    }
    front.into_iter().max().unwrap_or(0).max(floor)
}

/// Tally per unitary gate kind; every kind is present, barriers are not
/// counted.
pub fn gate_counts(c: &Circuit) -> BTreeMap<GateKind, usize> {
    let mut counts: BTreeMap<GateKind, usize> = GateKind::UNITARY.iter().map(|&k| (k, 0)).collect();
    for g in c.unitary_gates() {
        *counts.get_mut(&g.kind()).expect("unitary kind") += 1;
    }
    counts
}
