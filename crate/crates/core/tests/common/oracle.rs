//! Dense-matrix reference for circuits, built directly from the 2×2 / 4×4
//! gate definitions. Shared by unit and integration tests; independent of
//! the simulator kernels.
#![allow(dead_code)]

use num_complex::Complex64;
use qaoa_core::circuit::{Circuit, Gate};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn diagonal(entries: Vec<Complex64>) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * m.dim + i] = e;
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self ⊗ other`; `self` acts on the high-order bits.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let n = self.dim * other.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out.data[(i * other.dim + k) * n + j * other.dim + l] = self.get(i, j) * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Local matrix and the qubits it acts on. For two-qubit gates the local
/// basis index is `bit(qubits[0]) + 2·bit(qubits[1])`.
pub fn local_matrix(gate: &Gate) -> (Matrix, Vec<usize>) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match *gate {
        Gate::H(q) => (
            Matrix::from_rows(&[vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]),
            vec![q],
        ),
        Gate::Rx(q, t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            (
                Matrix::from_rows(&[vec![c(co, 0.0), c(0.0, -si)], vec![c(0.0, -si), c(co, 0.0)]]),
                vec![q],
            )
        }
        Gate::Rz(q, t) => (
            Matrix::diagonal(vec![
                Complex64::from_polar(1.0, -t / 2.0),
                Complex64::from_polar(1.0, t / 2.0),
            ]),
            vec![q],
        ),
        Gate::Rzz(a, b, t) => {
            let even = Complex64::from_polar(1.0, -t / 2.0);
            let odd = Complex64::from_polar(1.0, t / 2.0);
            (Matrix::diagonal(vec![even, odd, odd, even]), vec![a, b])
        }
        Gate::Cx(ctrl, tgt) => {
            // local index 1 = control set, target clear; 3 = both set
            let mut m = Matrix::zeros(4);
            for (from, to) in [(0, 0), (1, 3), (2, 2), (3, 1)] {
                m.data[to * 4 + from] = c(1.0, 0.0);
            }
            (m, vec![ctrl, tgt])
        }
        Gate::Barrier => (Matrix::identity(1), vec![]),
    }
}

/// Embeds a gate into the full `2^n`-dimensional space.
pub fn gate_unitary(gate: &Gate, num_qubits: usize) -> Matrix {
    let dim = 1usize << num_qubits;
    let (local, qubits) = local_matrix(gate);
    if qubits.is_empty() {
        return Matrix::identity(dim);
    }
    let rest_mask = (0..num_qubits)
        .filter(|q| !qubits.contains(q))
        .fold(0usize, |m, q| m | (1 << q));
    let local_index = |i: usize| {
        qubits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &q)| acc | (((i >> q) & 1) << k))
    };
    let mut m = Matrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            if row & rest_mask == col & rest_mask {
                m.data[row * dim + col] = local.get(local_index(row), local_index(col));
            }
        }
    }
    m
}

pub fn circuit_unitary(circuit: &Circuit) -> Matrix {
    let n = circuit.num_qubits();
    circuit
        .gates()
        .iter()
        .fold(Matrix::identity(1 << n), |acc, g| gate_unitary(g, n).mul(&acc))
}

/// State `U|0…0⟩` from the dense unitary.
pub fn circuit_state(circuit: &Circuit) -> Vec<Complex64> {
    let dim = 1usize << circuit.num_qubits();
    let mut zero = vec![c(0.0, 0.0); dim];
    zero[0] = c(1.0, 0.0);
    circuit
        .gates()
        .iter()
        .fold(zero, |v, g| gate_unitary(g, circuit.num_qubits()).apply(&v))
}

/// Entrywise comparison after aligning the global phase on the largest entry.
pub fn equal_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if a.dim != b.dim {
        return false;
    }
    vectors_equal_up_to_phase(&a.data, &b.data, tol)
}

pub fn vectors_equal_up_to_phase(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let Some(pivot) = (0..a.len()).max_by(|&i, &j| a[i].norm().total_cmp(&a[j].norm())) else {
        return true;
    };
    if a[pivot].norm() < tol {
        return b.iter().all(|x| x.norm() < tol);
    }
    let phase = b[pivot] / a[pivot];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| (x * phase - y).norm() <= tol)
}
