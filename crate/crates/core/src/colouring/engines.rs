use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite simple graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds from an edge list; loops are rejected, parallel edges merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::argument(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::argument(format!("loop at vertex {a}")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Self { adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::from_edges(n, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges whose endpoints share a colour.
    pub fn conflicts(&self, colours: &[u32]) -> Vec<(usize, usize)> {
        self.edges().filter(|&(a, b)| colours[a] == colours[b]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "strategy")]
pub enum Strategy {
    /// Deterministic backtracking for a colouring with at most `k` colours.
    Exact { k: u32, node_budget: u64 },
    Dsatur,
    Unique,
}

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Proper colouring of a quotient graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientColouring {
    pub colours: Vec<u32>,
    pub palette: usize,
}

impl QuotientColouring {
    pub fn new(colours: Vec<u32>) -> Self {
        let palette = colours.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        Self { colours, palette }
    }
}

/// Colour with the chosen strategy; `Ok(None)` means the exact search
/// proved that no `k`-colouring exists.
pub fn colour_quotient(g: &SimpleGraph, strategy: Strategy) -> Result<Option<QuotientColouring>> {
    let colours = match strategy {
        Strategy::Exact { k, node_budget } => match exact_k(g, k, node_budget)? {
            Some(c) => c,
            None => return Ok(None),
        },
        Strategy::Dsatur => dsatur(g),
        Strategy::Unique => (0..g.vertex_count() as u32).collect(),
    };
    Ok(Some(QuotientColouring::new(colours)))
}

/// Backtracking over vertices in index order, trying colours in increasing
/// order; a vertex never opens more than one new colour beyond those used
/// so far. A search that exhausts `node_budget` is a resource error, kept
/// distinct from the proven `None`.
pub fn exact_k(g: &SimpleGraph, k: u32, node_budget: u64) -> Result<Option<Vec<u32>>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    const NONE: u32 = u32::MAX;
    let mut colours = vec![NONE; n];
    // max colour used among vertices 0..i, plus one, before vertex i
    let mut opened = vec![0u32; n + 1];
    let mut next_try = vec![0u32; n];
    let mut nodes: u64 = 0;
    let mut i = 0usize;
    loop {
        let limit = k.min(opened[i] + 1);
        let mut c = next_try[i];
        while c < limit && g.neighbours(i).iter().any(|&w| w < i && colours[w] == c) {
            c += 1;
        }
        if c < limit {
            nodes += 1;
            if nodes > node_budget {
                return Err(Error::resource(format!(
                    "no {k}-colouring found within the budget of {node_budget} search nodes"
                )));
            }
            colours[i] = c;
            next_try[i] = c + 1;
            opened[i + 1] = opened[i].max(c + 1);
            i += 1;
            if i == n {
                return Ok(Some(colours));
            }
            next_try[i] = 0;
        } else {
            colours[i] = NONE;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
        }
    }
}

/// DSATUR: repeatedly colour the uncoloured vertex with the most distinct
/// neighbour colours (ties: higher degree, then lower index) with its
/// lowest free colour.
pub fn dsatur(g: &SimpleGraph) -> Vec<u32> {
    let n = g.vertex_count();
    const NONE: u32 = u32::MAX;
    let mut colours = vec![NONE; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colours[v] == NONE)
            .max_by(|&a, &b| {
                sat[a]
                    .cmp(&sat[b])
                    .then(g.degree(a).cmp(&g.degree(b)))
                    .then(b.cmp(&a))
            })
            .unwrap();
        let c = (0..).find(|&c| !seen[v].get(c as usize).copied().unwrap_or(false)).unwrap();
        colours[v] = c;
        for &w in g.neighbours(v) {
            let s = &mut seen[w];
            if s.len() <= c as usize {
                s.resize(c as usize + 1, false);
            }
            if !s[c as usize] {
                s[c as usize] = true;
                sat[w] += 1;
            }
        }
    }
    colours
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_no_two_colouring() {
        let t = SimpleGraph::complete(3);
        assert_eq!(exact_k(&t, 2, 1000).unwrap(), None);
        assert!(exact_k(&t, 3, 1000).unwrap().is_some());
    }

    #[test]
    fn four_cycle_checkerboard() {
        let c4 = SimpleGraph::cycle(4);
        assert_eq!(exact_k(&c4, 2, 1000).unwrap(), Some(vec![0, 1, 0, 1]));
        assert_eq!(exact_k(&c4, 5, 1000).unwrap(), Some(vec![0, 1, 0, 1]));
    }

    #[test]
    fn budget_is_distinguished_from_none() {
        let k6 = SimpleGraph::complete(6);
        assert!(matches!(exact_k(&k6, 5, 3), Err(Error::Resource(_))));
        assert_eq!(exact_k(&k6, 5, 1_000_000).unwrap(), None);
    }

    #[test]
    fn dsatur_is_proper() {
        let g = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let c = dsatur(&g);
        assert!(g.conflicts(&c).is_empty());
        assert_eq!(QuotientColouring::new(c).palette, 3);
    }

    #[test]
    fn loops_rejected() {
        assert!(SimpleGraph::from_edges(2, [(1, 1)]).is_err());
    }
}
