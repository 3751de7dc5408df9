//! Max-Cut → QUBO → Ising.
//!
//! Everything is a minimization: the QUBO built from a graph evaluates to
//! `-cut(x)`, and the Ising model reproduces the QUBO value exactly,
//! constant offset included. Bit `b` maps to spin `z = 1 - 2b`, so bit 0 is
//! spin +1 and bit 1 is spin -1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `f(x) = Σ_{i≤j} coeffs[(i,j)]·x_i·x_j + offset`, minimized over binary `x`.
/// Diagonal keys carry the linear terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Qubo {
    num_vars: usize,
    coeffs: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl Qubo {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            coeffs: BTreeMap::new(),
            offset: 0.0,
        }
    }

    /// Adds `value` to the `(i, j)` coefficient, in either index order.
    pub fn add(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        let key = if i <= j { (i, j) } else { (j, i) };
        if key.1 >= self.num_vars {
            return Err(Error::InvalidArgument(format!(
                "index {} out of range for {} variables",
                key.1, self.num_vars
            )));
        }
        *self.coeffs.entry(key).or_insert(0.0) += value;
        Ok(())
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.coeffs
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<f64> {
        check_len(self.num_vars, x.len())?;
        Ok(self
            .coeffs
            .iter()
            .filter(|(&(i, j), _)| x[i] && x[j])
            .map(|(_, c)| c)
            .sum::<f64>()
            + self.offset)
    }
}

/// `E(z) = Σ h_i z_i + Σ_{i<j} J_ij z_i z_j + offset` over spins `z ∈ {±1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel {
    num_spins: usize,
    h: BTreeMap<usize, f64>,
    j: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(num_spins: usize) -> Self {
        Self {
            num_spins,
            h: BTreeMap::new(),
            j: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn add_field(&mut self, i: usize, value: f64) -> Result<()> {
        self.check_index(i)?;
        *self.h.entry(i).or_insert(0.0) += value;
        Ok(())
    }

    pub fn add_coupling(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "coupling needs two distinct spins, got ({i}, {j})"
            )));
        }
        let key = if i < j { (i, j) } else { (j, i) };
        self.check_index(key.1)?;
        *self.j.entry(key).or_insert(0.0) += value;
        Ok(())
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.num_spins {
            return Err(Error::InvalidArgument(format!(
                "spin {i} out of range for {} spins",
                self.num_spins
            )));
        }
        Ok(())
    }

    /// Drops fields and couplings that are exactly zero.
    fn prune(mut self) -> Self {
        self.h.retain(|_, v| *v != 0.0);
        self.j.retain(|_, v| *v != 0.0);
        self
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn fields(&self) -> &BTreeMap<usize, f64> {
        &self.h
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.j
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Energy of the basis state whose bit `i` (qubit `i`) is bit `i` of
    /// `index`. No length check; higher bits are ignored.
    pub fn energy_of_index(&self, index: u64) -> f64 {
        let spin = |i: usize| if (index >> i) & 1 == 0 { 1.0 } else { -1.0 };
        let mut e = self.offset;
        for (&i, &h) in &self.h {
            e += h * spin(i);
        }
        for (&(i, j), &c) in &self.j {
            // z_i z_j = +1 when the bits agree
            e += if ((index >> i) ^ (index >> j)) & 1 == 0 { c } else { -c };
        }
        e
    }

    /// Smallest and largest energy over all assignments, by enumeration.
    pub fn energy_bounds(&self) -> (f64, f64) {
        (0..1u64 << self.num_spins)
            .map(|idx| self.energy_of_index(idx))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| (lo.min(e), hi.max(e)))
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// Per edge `(u, v, w)`: `-w` on both diagonals and `+2w` on `(u, v)`, so
/// that `f(x) = -cut(x)`.
pub fn maxcut_to_qubo(g: &Graph) -> Qubo {
    let mut q = Qubo::new(g.num_nodes());
    for e in g.edges() {
        // graph invariants guarantee in-range indices
        q.add(e.u, e.u, -e.weight).expect("valid edge");
        q.add(e.v, e.v, -e.weight).expect("valid edge");
        q.add(e.u, e.v, 2.0 * e.weight).expect("valid edge");
    }
    q
}

/// Substitutes `x_i = (1 - z_i) / 2`. Zero fields and couplings are dropped.
pub fn qubo_to_ising(q: &Qubo) -> IsingModel {
    let mut m = IsingModel::new(q.num_vars());
    m.add_offset(q.offset());
    for (&(i, j), &c) in q.coeffs() {
        if i == j {
            m.add_field(i, -c / 2.0).expect("valid index");
            m.add_offset(c / 2.0);
        } else {
            let quarter = c / 4.0;
            m.add_offset(quarter);
            m.add_field(i, -quarter).expect("valid index");
            m.add_field(j, -quarter).expect("valid index");
            m.add_coupling(i, j, quarter).expect("valid index");
        }
    }
    m.prune()
}

/// Convenience for the full Max-Cut pipeline.
pub fn maxcut_to_ising(g: &Graph) -> IsingModel {
    qubo_to_ising(&maxcut_to_qubo(g))
}

pub fn ising_energy(m: &IsingModel, assignment: &[bool]) -> Result<f64> {
    check_len(m.num_spins, assignment.len())?;
    Ok(m.energy_of_index(crate::graph::index_from_bits(assignment)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bits_from_index, cut_value};

    fn single_edge() -> Graph {
        Graph::unweighted(2, [(0, 1)]).unwrap()
    }

    /// Minimum of a QUBO by listing all assignments.
    fn enumerate_min(q: &Qubo) -> f64 {
        (0..1u64 << q.num_vars())
            .map(|i| q.evaluate(&bits_from_index(i, q.num_vars())).unwrap())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn single_edge_qubo() {
        let q = maxcut_to_qubo(&single_edge());
        let expected: BTreeMap<_, _> = [((0, 0), -1.0), ((1, 1), -1.0), ((0, 1), 2.0)].into();
        assert_eq!(q.coeffs(), &expected);
        assert_eq!(q.offset(), 0.0);
        assert_eq!(enumerate_min(&q), -1.0);
        assert_eq!(q.evaluate(&[false, true]).unwrap(), -1.0);
        assert_eq!(q.evaluate(&[true, false]).unwrap(), -1.0);
        assert_eq!(q.evaluate(&[true, true]).unwrap(), 0.0);
    }

    #[test]
    fn empty_and_triangle_qubo() {
        let q = maxcut_to_qubo(&Graph::new(3, []).unwrap());
        assert!(q.coeffs().is_empty());
        assert_eq!(enumerate_min(&q), 0.0);
        assert_eq!(enumerate_min(&maxcut_to_qubo(&Graph::complete(3).unwrap())), -2.0);
    }

    #[test]
    fn single_edge_ising() {
        let m = maxcut_to_ising(&single_edge());
        assert!(m.fields().is_empty());
        assert_eq!(m.couplings(), &BTreeMap::from([((0, 1), 0.5)]));
        assert_eq!(m.offset(), -0.5);
        assert_eq!(ising_energy(&m, &[false, true]).unwrap(), -1.0);
        assert_eq!(ising_energy(&m, &[true, false]).unwrap(), -1.0);
        assert_eq!(ising_energy(&m, &[false, false]).unwrap(), 0.0);
        assert_eq!(ising_energy(&m, &[true, true]).unwrap(), 0.0);
    }

    #[test]
    fn linear_term_ising() {
        let c = 3.0;
        let mut q = Qubo::new(1);
        q.add(0, 0, c).unwrap();
        let m = qubo_to_ising(&q);
        assert_eq!(m.fields(), &BTreeMap::from([(0, -c / 2.0)]));
        assert_eq!(m.offset(), c / 2.0);
        for bit in [false, true] {
            assert_eq!(ising_energy(&m, &[bit]).unwrap(), q.evaluate(&[bit]).unwrap());
        }
    }

    #[test]
    fn zero_qubo_gives_zero_ising() {
        let m = qubo_to_ising(&Qubo::new(4));
        assert!(m.fields().is_empty() && m.couplings().is_empty());
        assert_eq!(m.offset(), 0.0);
        assert_eq!(ising_energy(&m, &[true, false, true, true]).unwrap(), 0.0);
    }

    #[test]
    fn general_qubo_matches_ising_everywhere() {
        let mut q = Qubo::new(3);
        q.add(0, 0, 1.5).unwrap();
        q.add(2, 1, -0.75).unwrap();
        q.add(0, 2, 2.25).unwrap();
        q.add(1, 1, -4.0).unwrap();
        q.add_offset(0.125);
        let m = qubo_to_ising(&q);
        for idx in 0..8 {
            let bits = bits_from_index(idx, 3);
            assert_eq!(ising_energy(&m, &bits).unwrap(), q.evaluate(&bits).unwrap());
        }
    }

    #[test]
    fn length_mismatch() {
        let m = maxcut_to_ising(&single_edge());
        assert!(matches!(
            ising_energy(&m, &[true]),
            Err(Error::LengthMismatch { expected: 2, actual: 1 })
        ));
        assert!(maxcut_to_qubo(&single_edge()).evaluate(&[true; 3]).is_err());
    }

    #[test]
    fn weighted_energy_is_negated_cut() {
        let g = Graph::new(4, [(0, 1, 0.5), (1, 2, 2.0), (0, 3, 1.25), (2, 3, 3.0)]).unwrap();
        let m = maxcut_to_ising(&g);
        for idx in 0..16 {
            let bits = bits_from_index(idx, 4);
            let diff = ising_energy(&m, &bits).unwrap() + cut_value(&g, &bits).unwrap();
            assert!(diff.abs() < 1e-12);
        }
    }

    #[test]
    fn energy_bounds_of_single_edge() {
        assert_eq!(maxcut_to_ising(&single_edge()).energy_bounds(), (-1.0, 0.0));
    }
}
