//! Dense statevector simulation.
//!
//! Amplitudes are stored little-endian: bit `i` of a basis-state index is
//! qubit `i`. Kernels update the flat amplitude array in place, pairing
//! indices that differ only in the target bit; diagonal gates (RZ, RZZ) are
//! plain phase multiplications. Large states are processed in parallel, but
//! every kernel is elementwise and every reduction is split into fixed-size
//! chunks summed in index order, so results do not depend on thread count.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::encoding::IsingModel;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Amplitude count from which kernels run on the rayon pool.
const PARALLEL_LEN: usize = 1 << 14;
/// Fixed reduction chunk (see module docs).
const REDUCE_CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`
    pub fn zero(num_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        Ok(Self {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        chunked_sum(&self.amps, |_, a| a.norm_sqr())
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_each_pair(&mut self.amps, q, |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            Gate::Rx(q, theta) => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                let mis = Complex64::new(0.0, -s);
                for_each_pair(&mut self.amps, q, |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = x * c + y * mis;
                    *b = x * mis + y * c;
                });
            }
            Gate::Rz(q, theta) => {
                let phases = [
                    Complex64::from_polar(1.0, -theta / 2.0),
                    Complex64::from_polar(1.0, theta / 2.0),
                ];
                for_each_index(&mut self.amps, |i, a| *a *= phases[(i >> q) & 1]);
            }
            Gate::Rzz(q, r, theta) => {
                let phases = [
                    Complex64::from_polar(1.0, -theta / 2.0),
                    Complex64::from_polar(1.0, theta / 2.0),
                ];
                for_each_index(&mut self.amps, |i, a| {
                    *a *= phases[((i >> q) ^ (i >> r)) & 1];
                });
            }
            Gate::Cx(control, target) => {
                for_each_pair(&mut self.amps, target, |lo, a, b| {
                    if (lo >> control) & 1 == 1 {
                        std::mem::swap(a, b);
                    }
                });
            }
            Gate::Barrier => {}
        }
    }
}

/// Calls `f(index_of_a, a, b)` for every amplitude pair `(a, b)` whose
/// indices differ only in bit `target` (`a` has it clear).
fn for_each_pair<F>(amps: &mut [Complex64], target: usize, f: F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64) + Sync,
{
    let half = 1usize << target;
    let block = half << 1;
    let run_block = |base: usize, chunk: &mut [Complex64]| {
        let (lo, hi) = chunk.split_at_mut(half);
        for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            f(base + k, a, b);
        }
    };
    if amps.len() < PARALLEL_LEN {
        for (i, chunk) in amps.chunks_mut(block).enumerate() {
            run_block(i * block, chunk);
        }
    } else if half < PARALLEL_LEN / 2 {
        amps.par_chunks_mut(block)
            .enumerate()
            .for_each(|(i, chunk)| run_block(i * block, chunk));
    } else {
        // Few large blocks: parallelize inside each one.
        for (i, chunk) in amps.chunks_mut(block).enumerate() {
            let base = i * block;
            let (lo, hi) = chunk.split_at_mut(half);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .enumerate()
                .with_min_len(1024)
                .for_each(|(k, (a, b))| f(base + k, a, b));
        }
    }
}

fn for_each_index<F>(amps: &mut [Complex64], f: F)
where
    F: Fn(usize, &mut Complex64) + Sync,
{
    if amps.len() < PARALLEL_LEN {
        amps.iter_mut().enumerate().for_each(|(i, a)| f(i, a));
    } else {
        amps.par_iter_mut()
            .enumerate()
            .with_min_len(1024)
            .for_each(|(i, a)| f(i, a));
    }
}

/// `Σ f(i, amps[i])` over fixed chunks, partial sums added in chunk order.
fn chunked_sum<F>(amps: &[Complex64], f: F) -> f64
where
    F: Fn(usize, &Complex64) -> f64 + Sync,
{
    let partial = |(c, chunk): (usize, &[Complex64])| -> f64 {
        let base = c * REDUCE_CHUNK;
        chunk.iter().enumerate().map(|(k, a)| f(base + k, a)).sum()
    };
    let partials: Vec<f64> = if amps.len() < PARALLEL_LEN {
        amps.chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
    } else {
        amps.par_chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
    };
    partials.into_iter().sum()
}

/// Width limit for [`Simulator::simulate`].
#[derive(Debug, Clone, Copy)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Simulator {
    pub fn new(max_qubits: usize) -> Self {
        Self { max_qubits }
    }

    pub fn check_width(&self, num_qubits: usize) -> Result<()> {
        if num_qubits > self.max_qubits {
            return Err(Error::Capacity {
                num_qubits,
                max: self.max_qubits,
                bytes: (1u128 << num_qubits) * std::mem::size_of::<Complex64>() as u128,
            });
        }
        Ok(())
    }

    /// `U_c |0…0⟩`
    pub fn simulate(&self, c: &Circuit) -> Result<StateVector> {
        self.check_width(c.num_qubits())?;
        let mut state = StateVector::zero(c.num_qubits());
        for g in c.gates() {
            state.apply(g);
        }
        Ok(state)
    }
}

/// Simulates with the default width limit.
pub fn simulate(c: &Circuit) -> Result<StateVector> {
    Simulator::default().simulate(c)
}

/// Exact `Σ_z |⟨z|ψ⟩|² E(z)` for the diagonal Ising cost. Within each chunk
/// the basis states are visited in Gray-code order so every energy is an
/// O(degree) update of the previous one.
pub fn expectation_diagonal(s: &StateVector, m: &IsingModel) -> Result<f64> {
    if s.num_qubits != m.num_spins() {
        return Err(Error::LengthMismatch {
            expected: m.num_spins(),
            actual: s.num_qubits,
        });
    }
    let n = s.num_qubits;
    let mut local: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (&(i, j), &c) in m.couplings() {
        local[i].push((j, c));
        local[j].push((i, c));
    }
    let fields: Vec<f64> = (0..n).map(|i| m.fields().get(&i).copied().unwrap_or(0.0)).collect();

    let chunk_len = REDUCE_CHUNK.min(s.amps.len());
    let chunk_bits = chunk_len.trailing_zeros();
    let partial = |c: usize| -> f64 {
        let base = (c * chunk_len) as u64;
        let mut index = base;
        let mut energy = m.energy_of_index(index);
        let mut acc = s.amps[index as usize].norm_sqr() * energy;
        for step in 1..chunk_len as u64 {
            let k = step.trailing_zeros() as usize;
            debug_assert!(k < chunk_bits as usize);
            // flipping spin k: E changes by -2 z_k (h_k + Σ_j J_kj z_j)
            let z = |i: usize| if (index >> i) & 1 == 0 { 1.0 } else { -1.0 };
            let mut field = fields[k];
            for &(j, c) in &local[k] {
                field += c * z(j);
            }
            energy -= 2.0 * z(k) * field;
            index ^= 1 << k;
            acc += s.amps[index as usize].norm_sqr() * energy;
        }
        acc
    };
    let chunks = s.amps.len() / chunk_len;
    let partials: Vec<f64> = if s.amps.len() < PARALLEL_LEN {
        (0..chunks).map(partial).collect()
    } else {
        (0..chunks).into_par_iter().map(partial).collect()
    };
    Ok(partials.into_iter().sum())
}

/// Measurement histogram keyed by basis-state index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    num_qubits: usize,
    shots: u64,
    outcomes: BTreeMap<u64, u64>,
}

impl Counts {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn outcomes(&self) -> &BTreeMap<u64, u64> {
        &self.outcomes
    }

    pub fn get(&self, index: u64) -> u64 {
        self.outcomes.get(&index).copied().unwrap_or(0)
    }

    /// Character `i` is the value of qubit `i`.
    pub fn bitstring(&self, index: u64) -> String {
        (0..self.num_qubits)
            .map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn by_bitstring(&self) -> BTreeMap<String, u64> {
        self.outcomes
            .iter()
            .map(|(&idx, &n)| (self.bitstring(idx), n))
            .collect()
    }

    /// Shot-weighted mean of `cost` over the outcomes.
    pub fn mean<F: Fn(u64) -> f64>(&self, cost: F) -> f64 {
        let total: f64 = self.outcomes.iter().map(|(&idx, &n)| n as f64 * cost(idx)).sum();
        total / self.shots as f64
    }
}

/// Draws `shots` computational-basis measurements.
///
/// `shots` uniforms are drawn from [`SeededRng`], sorted, and matched against
/// the cumulative distribution in a single pass over the amplitudes (inverse
/// CDF). Outcomes with zero probability are never produced.
pub fn sample(s: &StateVector, shots: u64, seed: u64) -> Result<Counts> {
    if shots < 1 {
        return Err(Error::InvalidArgument("at least one shot is required".into()));
    }
    let total = s.norm_sqr();
    let mut rng = SeededRng::new(seed);
    let mut draws: Vec<f64> = (0..shots).map(|_| rng.next_f64() * total).collect();
    draws.sort_unstable_by(f64::total_cmp);

    let mut outcomes = BTreeMap::new();
    let mut cumulative = 0.0;
    let mut next = 0;
    let last_nonzero = s.amps.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0);
    for (idx, a) in s.amps.iter().enumerate() {
        let p = a.norm_sqr();
        if p == 0.0 {
            continue;
        }
        cumulative += p;
        let start = next;
        // rounding can leave the final cumulative a hair below `total`
        while next < draws.len() && (draws[next] < cumulative || idx == last_nonzero) {
            next += 1;
        }
        if next > start {
            outcomes.insert(idx as u64, (next - start) as u64);
        }
    }
    Ok(Counts {
        num_qubits: s.num_qubits,
        shots,
        outcomes,
    })
}
