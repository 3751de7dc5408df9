//! Max-Cut instances: the weighted undirected graph, its plain-text file
//! format, a seeded random generator and an exact exhaustive solver.
//!
//! Assignments are bit vectors indexed by node: `assignment[i]` is the side
//! of node `i`. When packed into an integer, node `i` is bit `i`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Largest instance [`brute_force_optimum`] accepts.
pub const MAX_EXHAUSTIVE_NODES: usize = 28;

/// Gray-code steps per enumeration chunk. Fixed so that results do not
/// depend on the number of worker threads.
const ENUMERATION_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Weighted undirected graph with canonical edges (`u < v`), no self-loops,
/// no duplicate pairs and nonnegative finite weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    num_nodes: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, swapping endpoints into canonical order. Edge order is
    /// preserved.
    pub fn new<I>(num_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if num_nodes == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b, weight) in edges {
            let edge = check_edge(num_nodes, a, b, weight).map_err(Error::InvalidGraph)?;
            if !seen.insert((edge.u, edge.v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", edge.u, edge.v)));
            }
            out.push(edge);
        }
        Ok(Self { num_nodes, edges: out })
    }

    /// Unit-weight graph from node pairs.
    pub fn unweighted<I>(num_nodes: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(num_nodes, pairs.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn complete(num_nodes: usize) -> Result<Self> {
        Self::unweighted(
            num_nodes,
            (0..num_nodes).flat_map(|u| (u + 1..num_nodes).map(move |v| (u, v))),
        )
    }

    pub fn cycle(num_nodes: usize) -> Result<Self> {
        Self::unweighted(num_nodes, (0..num_nodes).map(|u| (u, (u + 1) % num_nodes)))
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_nodes];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Neighbour lists with edge weights.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    /// True when some pair of edges shares no endpoint.
    pub fn has_disjoint_edges(&self) -> bool {
        self.edges.iter().enumerate().any(|(i, a)| {
            self.edges[i + 1..]
                .iter()
                .any(|b| a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v)
        })
    }
}

fn check_edge(num_nodes: usize, a: usize, b: usize, weight: f64) -> std::result::Result<Edge, String> {
    if a == b {
        return Err(format!("self-loop on node {a}"));
    }
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    if v >= num_nodes {
        return Err(format!("node {v} out of range for {num_nodes} nodes"));
    }
    if !weight.is_finite() || weight < 0.0 {
        return Err(format!("edge ({u}, {v}) has invalid weight {weight}"));
    }
    Ok(Edge { u, v, weight })
}

/// Exact cut with the assignment that realizes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutSolution {
    pub assignment: Vec<bool>,
    pub value: f64,
}

/// Erdős–Rényi G(n, density) with unit weights.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order and each is
/// kept when the next uniform draw of [`SeededRng`] is below `density`.
pub fn generate_random_graph(num_nodes: usize, density: f64, seed: u64) -> Result<Graph> {
    if num_nodes < 2 {
        return Err(Error::InvalidArgument(format!(
            "random graphs need at least 2 nodes, got {num_nodes}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut pairs = Vec::new();
    for u in 0..num_nodes {
        for v in u + 1..num_nodes {
            if rng.next_f64() < density {
                pairs.push((u, v));
            }
        }
    }
    Graph::unweighted(num_nodes, pairs)
}

/// Parses the instance format: a `<num_nodes> <num_edges>` header followed by
/// one `u v` or `u v w` line per edge. `#` starts a comment; blank lines are
/// ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_error(header_line, "header must be `<num_nodes> <num_edges>`"));
    }
    let num_nodes: usize = parse_field(header_line, fields[0], "node count")?;
    let num_edges: usize = parse_field(header_line, fields[1], "edge count")?;
    if num_nodes == 0 {
        return Err(parse_error(header_line, "graph needs at least one node"));
    }

    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(num_edges);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_error(line_no, "edge must be `u v` or `u v w`"));
        }
        let a = parse_field(line_no, fields[0], "node index")?;
        let b = parse_field(line_no, fields[1], "node index")?;
        let weight = match fields.get(2) {
            Some(w) => parse_field(line_no, w, "weight")?,
            None => 1.0,
        };
        let edge = check_edge(num_nodes, a, b, weight).map_err(|m| parse_error(line_no, &m))?;
        if !seen.insert((edge.u, edge.v)) {
            return Err(parse_error(
                line_no,
                &format!("duplicate edge ({}, {})", edge.u, edge.v),
            ));
        }
        edges.push(edge);
    }
    if edges.len() != num_edges {
        return Err(parse_error(
            header_line,
            &format!("header declares {num_edges} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph { num_nodes, edges })
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| parse_error(line, &format!("invalid {what} `{field}`")))
}

/// Serializes in the instance format. Unit weights are omitted; other weights
/// use the shortest representation that parses back to the same value.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.num_nodes, g.edges.len());
    for e in &g.edges {
        if e.weight == 1.0 {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        } else {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
        }
    }
    out
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_graph(g))?;
    Ok(())
}

/// Total weight of edges whose endpoints lie on different sides.
pub fn cut_value(g: &Graph, assignment: &[bool]) -> Result<f64> {
    if assignment.len() != g.num_nodes {
        return Err(Error::LengthMismatch {
            expected: g.num_nodes,
            actual: assignment.len(),
        });
    }
    Ok(g.edges
        .iter()
        .filter(|e| assignment[e.u] != assignment[e.v])
        .map(|e| e.weight)
        .sum())
}

/// Bit vector of the low `len` bits of `index` (bit `i` -> entry `i`).
pub fn bits_from_index(index: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| (index >> i) & 1 == 1).collect()
}

pub fn index_from_bits(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

fn packed_cut(g: &Graph, mask: u64) -> f64 {
    g.edges
        .iter()
        .filter(|e| ((mask >> e.u) ^ (mask >> e.v)) & 1 == 1)
        .map(|e| e.weight)
        .sum()
}

/// Higher value wins; equal values go to the smaller assignment integer.
fn better(candidate: (f64, u64), incumbent: (f64, u64)) -> bool {
    candidate.0 > incumbent.0 || (candidate.0 == incumbent.0 && candidate.1 < incumbent.1)
}

/// Exact maximum cut by Gray-code enumeration.
///
/// Node 0 is pinned to side 0, so `2^(n-1)` assignments are visited and the
/// returned assignment always has `assignment[0] == false`. Each step flips a
/// single node and updates the cut from that node's incident edges. Ties go
/// to the assignment with the smallest integer encoding; the enumeration is
/// split into fixed-size chunks so the answer does not depend on how many
/// threads run them.
pub fn brute_force_optimum(g: &Graph) -> Result<CutSolution> {
    let n = g.num_nodes;
    if n > MAX_EXHAUSTIVE_NODES {
        return Err(Error::TooLarge {
            num_nodes: n,
            max: MAX_EXHAUSTIVE_NODES,
        });
    }
    let adjacency = g.adjacency();
    let steps = 1u64 << (n - 1);
    let chunks = steps.div_ceil(ENUMERATION_CHUNK);

    let scan = |chunk: u64| -> (f64, u64) {
        let start = chunk * ENUMERATION_CHUNK;
        let end = (start + ENUMERATION_CHUNK).min(steps);
        // Free bits are nodes 1..n, hence the shift.
        let mut mask = (start ^ (start >> 1)) << 1;
        let mut value = packed_cut(g, mask);
        let mut best = (value, mask);
        for step in start + 1..end {
            let node = step.trailing_zeros() as usize + 1;
            let side = (mask >> node) & 1;
            let mut delta = 0.0;
            for &(nbr, w) in &adjacency[node] {
                if (mask >> nbr) & 1 == side {
                    delta += w;
                } else {
                    delta -= w;
                }
            }
            mask ^= 1 << node;
            value += delta;
            if better((value, mask), best) {
                best = (value, mask);
            }
        }
        best
    };

    let per_chunk: Vec<(f64, u64)> = if n >= 18 {
        (0..chunks).into_par_iter().map(scan).collect()
    } else {
        (0..chunks).map(scan).collect()
    };
    let (_, mask) = per_chunk
        .into_iter()
        .reduce(|best, c| if better(c, best) { c } else { best })
        .expect("at least one chunk");

    let assignment = bits_from_index(mask, n);
    let value = cut_value(g, &assignment)?;
    Ok(CutSolution { assignment, value })
}

/// Exact maximum cut by evaluating every one of the `2^n` assignments
/// directly. Slow; kept as an independent cross-check of
/// [`brute_force_optimum`] for small graphs.
pub fn naive_optimum(g: &Graph) -> Result<CutSolution> {
    let n = g.num_nodes;
    if n > MAX_EXHAUSTIVE_NODES {
        return Err(Error::TooLarge {
            num_nodes: n,
            max: MAX_EXHAUSTIVE_NODES,
        });
    }
    let mut best: Option<CutSolution> = None;
    for index in 0..1u64 << n {
        let assignment = bits_from_index(index, n);
        let value = cut_value(g, &assignment)?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(CutSolution { assignment, value });
        }
    }
    Ok(best.expect("at least one assignment"))
}
