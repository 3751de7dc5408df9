//! Edge coloring for grouping commuting two-qubit terms into rounds.
//!
//! Each color class is a matching, so all gates of one round act on disjoint
//! qubits. The primary method is first-fit greedy over edges sorted by
//! endpoint-degree sum (descending, ties by pair). Greedy can need up to
//! `2Δ - 1` colors; when it exceeds `Δ + 1` the Misra–Gries construction is
//! used instead, which never needs more than `Δ + 1`.

/// Colors `edges` (distinct pairs `u < v` over `num_nodes` nodes). Returns
/// one color per input edge, numbered from 0 without gaps.
pub fn edge_coloring(num_nodes: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    if edges.is_empty() {
        return Vec::new();
    }
    let order = degree_order(num_nodes, edges);
    let greedy = greedy_coloring(num_nodes, edges, &order);
    let max_degree = degrees(num_nodes, edges).into_iter().max().unwrap_or(0);
    if color_count(&greedy) <= max_degree + 1 {
        return greedy;
    }
    compact(misra_gries(num_nodes, edges, &order, max_degree))
}

pub fn color_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |c| c + 1)
}

fn degrees(num_nodes: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0; num_nodes];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Edge indices by descending degree sum, then ascending pair.
pub(crate) fn degree_order(num_nodes: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let deg = degrees(num_nodes, edges);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| {
        let (u, v) = edges[i];
        (std::cmp::Reverse(deg[u] + deg[v]), u, v)
    });
    order
}

fn greedy_coloring(num_nodes: usize, edges: &[(usize, usize)], order: &[usize]) -> Vec<usize> {
    let mut used: Vec<Vec<bool>> = vec![Vec::new(); num_nodes];
    let mut colors = vec![usize::MAX; edges.len()];
    for &i in order {
        let (u, v) = edges[i];
        let taken = |node: &Vec<bool>, c: usize| node.get(c).copied().unwrap_or(false);
        let c = (0..)
            .find(|&c| !taken(&used[u], c) && !taken(&used[v], c))
            .expect("unbounded search");
        for node in [u, v] {
            if used[node].len() <= c {
                used[node].resize(c + 1, false);
            }
            used[node][c] = true;
        }
        colors[i] = c;
    }
    colors
}

/// Relabels colors to `0..k` in order of first appearance by color value.
fn compact(colors: Vec<usize>) -> Vec<usize> {
    let mut present: Vec<usize> = colors.clone();
    present.sort_unstable();
    present.dedup();
    colors
        .into_iter()
        .map(|c| present.binary_search(&c).expect("present"))
        .collect()
}

/// Per-node table `at[x][c]` = neighbour joined to `x` by an edge of color `c`.
struct ColorTable {
    at: Vec<Vec<Option<usize>>>,
}

impl ColorTable {
    fn is_free(&self, x: usize, c: usize) -> bool {
        self.at[x][c].is_none()
    }

    fn free_color(&self, x: usize) -> usize {
        self.at[x]
            .iter()
            .position(Option::is_none)
            .expect("Δ+1 colors leave one free")
    }

    fn color_of(&self, x: usize, y: usize) -> Option<usize> {
        self.at[x].iter().position(|&n| n == Some(y))
    }

    fn set(&mut self, x: usize, y: usize, c: usize) {
        self.at[x][c] = Some(y);
        self.at[y][c] = Some(x);
    }

    fn clear(&mut self, x: usize, y: usize) {
        if let Some(c) = self.color_of(x, y) {
            self.at[x][c] = None;
            self.at[y][c] = None;
        }
    }
}

fn misra_gries(num_nodes: usize, edges: &[(usize, usize)], order: &[usize], max_degree: usize) -> Vec<usize> {
    let palette = max_degree + 1;
    let mut table = ColorTable {
        at: vec![vec![None; palette]; num_nodes],
    };
    let mut neighbours = vec![Vec::new(); num_nodes];
    for &(u, v) in edges {
        neighbours[u].push(v);
        neighbours[v].push(u);
    }

    for &i in order {
        let (u, v) = edges[i];

        // Maximal fan at u starting from the uncolored edge (u, v).
        let mut fan = vec![v];
        loop {
            let last = *fan.last().expect("nonempty");
            let next = neighbours[u]
                .iter()
                .copied()
                .find(|&w| !fan.contains(&w) && table.color_of(u, w).is_some_and(|c| table.is_free(last, c)));
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }

        let c = table.free_color(u);
        let d = table.free_color(*fan.last().expect("nonempty"));

        // Invert the cd-path leaving u along color d.
        if c != d {
            let mut path = Vec::new();
            let mut x = u;
            let mut want = d;
            while let Some(y) = table.at[x][want] {
                path.push((x, y, want));
                x = y;
                want = if want == d { c } else { d };
            }
            for &(a, b, _) in &path {
                table.clear(a, b);
            }
            for &(a, b, col) in &path {
                table.set(a, b, if col == d { c } else { d });
            }
        }

        // Shortest fan prefix ending at a node where d is free.
        let mut end = None;
        for (k, &w) in fan.iter().enumerate() {
            if k > 0 {
                let still_fan = table.color_of(u, w).is_some_and(|col| table.is_free(fan[k - 1], col));
                if !still_fan {
                    break;
                }
            }
            if table.is_free(w, d) {
                end = Some(k);
                break;
            }
        }
        let end = end.expect("some fan prefix ends at a node missing d");

        // Rotate the prefix and close it with d.
        for k in 0..end {
            let col = table.color_of(u, fan[k + 1]).expect("fan edge colored");
            table.clear(u, fan[k + 1]);
            table.set(u, fan[k], col);
        }
        table.set(u, fan[end], d);
    }

    edges
        .iter()
        .map(|&(u, v)| table.color_of(u, v).expect("every edge colored"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_random_graph;

    fn assert_proper(edges: &[(usize, usize)], colors: &[usize]) {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = (edges[i], edges[j]);
                let share = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
                if share {
                    assert_ne!(colors[i], colors[j], "{a:?} and {b:?} share a color");
                }
            }
        }
    }

    fn pairs(num_nodes: usize, density: f64, seed: u64) -> Vec<(usize, usize)> {
        generate_random_graph(num_nodes, density, seed)
            .unwrap()
            .edges()
            .iter()
            .map(|e| (e.u, e.v))
            .collect()
    }

    #[test]
    fn triangle_needs_three() {
        let edges = [(0, 1), (1, 2), (0, 2)];
        let colors = edge_coloring(3, &edges);
        assert_proper(&edges, &colors);
        assert_eq!(color_count(&colors), 3);
    }

    #[test]
    fn misra_gries_is_proper_and_bounded() {
        for seed in 0..300 {
            let n = 3 + (seed as usize % 18);
            let edges = pairs(n, [0.2, 0.5, 0.8][seed as usize % 3], seed);
            if edges.is_empty() {
                continue;
            }
            let max_deg = degrees(n, &edges).into_iter().max().unwrap();
            let order = degree_order(n, &edges);
            let colors = misra_gries(n, &edges, &order, max_deg);
            assert_proper(&edges, &colors);
            assert!(color_count(&colors) <= max_deg + 1);
        }
    }

    #[test]
    fn combined_coloring_is_bounded() {
        for seed in 0..300 {
            let n = 3 + (seed as usize % 18);
            let edges = pairs(n, [0.1, 0.3, 0.6, 0.9][seed as usize % 4], 1000 + seed);
            let colors = edge_coloring(n, &edges);
            assert_proper(&edges, &colors);
            let max_deg = degrees(n, &edges).into_iter().max().unwrap_or(0);
            assert!(color_count(&colors) <= max_deg + 1);
            // no gaps in the palette
            for c in 0..color_count(&colors) {
                assert!(colors.contains(&c));
            }
        }
    }
}
