use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Cover, CoverVertex, PeriodicGraph, VertexKey};
use crate::error::{Error, Result};

pub const DEFAULT_PATCH_CAP: usize = 200_000;

/// Finite ball of the cover around a root vertex.
#[derive(Clone, Debug)]
pub struct Patch {
    pub vertices: Vec<CoverVertex>,
    pub keys: Vec<VertexKey>,
    /// Graph distance from the root.
    pub distance: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
    pub radius: usize,
    index: BTreeMap<VertexKey, usize>,
}

impl Patch {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn root(&self) -> &CoverVertex {
        &self.vertices[0]
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.distance[i] < self.radius
    }

    pub fn interior_mask(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.is_interior(i)).collect()
    }

    pub fn interior_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_interior(i)).count()
    }

    pub fn index_of(&self, key: &VertexKey) -> Option<usize> {
        self.index.get(key).copied()
    }
}

impl<'a> Cover<'a> {
    /// Breadth-first ball of radius `r`; vertices ordered by layer, then by
    /// canonical key.
    pub fn patch(&self, root: &CoverVertex, r: usize, cap: usize) -> Result<Patch> {
        let mut vertices = vec![root.clone()];
        let mut keys = vec![self.key(root)];
        let mut distance = vec![0];
        let mut index = BTreeMap::new();
        index.insert(keys[0], 0usize);
        let mut layer_start = 0;
        for d in 1..=r {
            let layer_end = vertices.len();
            let mut next: BTreeMap<VertexKey, CoverVertex> = BTreeMap::new();
            for i in layer_start..layer_end {
                for (_, w) in self.neighbours(&vertices[i]) {
                    let k = self.key(&w);
                    if !index.contains_key(&k) {
                        next.entry(k).or_insert(w);
                    }
                }
            }
            if vertices.len() + next.len() > cap {
                return Err(Error::resource(format!(
                    "patch of radius {r} exceeds the cap of {cap} vertices at layer {d}"
                )));
            }
            for (k, w) in next {
                index.insert(k, vertices.len());
                vertices.push(w);
                keys.push(k);
                distance.push(d);
            }
            layer_start = layer_end;
            if layer_start == vertices.len() {
                break;
            }
        }
        let mut edge_set = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for (_, w) in self.neighbours(&vertices[i]) {
                if let Some(&j) = index.get(&self.key(&w)) {
                    if i != j && edge_set.insert((i.min(j), i.max(j))) {
                        adjacency[i].push(j);
                        adjacency[j].push(i);
                    }
                }
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(Patch {
            vertices,
            keys,
            distance,
            edges: edge_set.into_iter().collect(),
            adjacency,
            radius: r,
            index,
        })
    }
}

pub fn build_patch(pg: &PeriodicGraph, root: &CoverVertex, r: usize) -> Result<Patch> {
    Cover::new(pg)?.patch(root, r, DEFAULT_PATCH_CAP)
}

/// Components of `ball(R) − ball(r)` that reach the sphere of radius `R`.
pub fn estimate_ends(pg: &PeriodicGraph, r: usize, big_r: usize) -> Result<usize> {
    if r == 0 || big_r <= r {
        return Err(Error::argument(format!(
            "need 1 ≤ r < R for the end estimate, got r = {r}, R = {big_r}"
        )));
    }
    let cover = Cover::new(pg)?;
    let patch = cover.patch(&cover.root(), big_r, DEFAULT_PATCH_CAP)?;
    Ok(ends_of_patch(&patch, r))
}

pub(crate) fn ends_of_patch(patch: &Patch, r: usize) -> usize {
    let n = patch.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if patch.distance[s] <= r || comp[s] != usize::MAX {
            continue;
        }
        let mut touches = false;
        let mut stack = vec![s];
        comp[s] = s;
        while let Some(v) = stack.pop() {
            touches |= patch.distance[v] == patch.radius;
            for &w in &patch.adjacency[v] {
                if patch.distance[w] > r && comp[w] == usize::MAX {
                    comp[w] = s;
                    stack.push(w);
                }
            }
        }
        if touches {
            count += 1;
        }
    }
    count
}

/// Result of [`patch_connectivity`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectivity {
    /// Smallest interior cut cutting off a part of the patch away from its
    /// boundary sphere, with the first such cut found.
    Exact { k: usize, cut: Vec<usize> },
    AtLeast(usize),
}

impl Connectivity {
    pub fn value(&self) -> usize {
        match self {
            Connectivity::Exact { k, .. } => *k,
            Connectivity::AtLeast(k) => *k,
        }
    }
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Connectivity::Exact { k, .. } => write!(f, "{k}"),
            Connectivity::AtLeast(k) => write!(f, "≥{k}"),
        }
    }
}

/// Smallest interior vertex cut of size `< kmax` leaving a component that
/// avoids the boundary sphere; `≥kmax` when there is none.
pub fn patch_connectivity(patch: &Patch, kmax: usize) -> Result<Connectivity> {
    if kmax == 0 || patch.interior_count() < kmax + 2 {
        return Err(Error::argument(format!(
            "patch has {} interior vertices; need at least {} for kmax = {kmax}",
            patch.interior_count(),
            kmax + 2
        )));
    }
    for k in 1..kmax {
        if let Some(cut) = vertex_cuts(patch, k).into_iter().next() {
            return Ok(Connectivity::Exact { k, cut });
        }
    }
    Ok(Connectivity::AtLeast(kmax))
}

/// All interior vertex sets of size `k` whose removal leaves a component
/// avoiding the sphere, in lexicographic order. The last vertex of each
/// set is found as an articulation point of the remaining graph with the
/// sphere contracted to one node, so sets containing a smaller cut may be
/// missed or reported; callers use the smallest `k` with a cut.
pub fn vertex_cuts(patch: &Patch, k: usize) -> Vec<Vec<usize>> {
    let interior: Vec<usize> = (0..patch.len()).filter(|&i| patch.is_interior(i)).collect();
    let mut out = BTreeSet::new();
    let mut removed = vec![false; patch.len()];
    let mut prefix = Vec::new();
    cuts_rec(patch, &interior, k, 0, &mut prefix, &mut removed, &mut out);
    out.into_iter().collect()
}

fn cuts_rec(
    patch: &Patch,
    interior: &[usize],
    k: usize,
    from: usize,
    prefix: &mut Vec<usize>,
    removed: &mut [bool],
    out: &mut BTreeSet<Vec<usize>>,
) {
    if prefix.len() + 1 == k {
        for b in articulation_points(patch, removed) {
            if patch.is_interior(b) && prefix.last().map_or(true, |&l| b > l) {
                let mut c = prefix.clone();
                c.push(b);
                out.insert(c);
            }
        }
        return;
    }
    for idx in from..interior.len() {
        let a = interior[idx];
        prefix.push(a);
        removed[a] = true;
        cuts_rec(patch, interior, k, idx + 1, prefix, removed, out);
        removed[a] = false;
        prefix.pop();
    }
}

/// Articulation points of the patch minus `removed`, with all sphere
/// vertices joined to an extra node (which is never reported). Iterative
/// Hopcroft–Tarjan from the extra node.
fn articulation_points(patch: &Patch, removed: &[bool]) -> Vec<usize> {
    let n = patch.len();
    let sink = n;
    let sphere: Vec<usize> = (0..n)
        .filter(|&i| !removed[i] && patch.distance[i] == patch.radius)
        .collect();
    let nbrs = |v: usize| -> Vec<usize> {
        if v == sink {
            sphere.clone()
        } else {
            let mut a: Vec<usize> = patch.adjacency[v].iter().copied().filter(|&w| !removed[w]).collect();
            if patch.distance[v] == patch.radius {
                a.push(sink);
            }
            a
        }
    };
    let mut disc = vec![usize::MAX; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut is_art = vec![false; n + 1];
    let mut time = 0;
    let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
    disc[sink] = time;
    low[sink] = time;
    time += 1;
    stack.push((sink, usize::MAX, nbrs(sink), 0));
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        if top.3 < top.2.len() {
            let w = top.2[top.3];
            top.3 += 1;
            if w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                let nw = nbrs(w);
                stack.push((w, v, nw, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(p) = stack.last() {
                let pv = p.0;
                low[pv] = low[pv].min(low[v]);
                if pv != sink && low[v] >= disc[pv] {
                    is_art[pv] = true;
                }
            }
        }
    }
    (0..n).filter(|&v| is_art[v] && !removed[v]).collect()
}

/// Components of `patch − cut` that avoid the sphere, each sorted.
pub fn separated_components(patch: &Patch, cut: &[usize]) -> Vec<Vec<usize>> {
    let n = patch.len();
    let mut removed = vec![false; n];
    for &c in cut {
        removed[c] = true;
    }
    let mut seen = removed.clone();
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        let mut touches = false;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            touches |= patch.distance[v] == patch.radius;
            for &w in &patch.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        if !touches {
            comp.sort_unstable();
            out.push(comp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::corpus;

    fn patch_of(pg: &PeriodicGraph, r: usize) -> Patch {
        let c = Cover::new(pg).unwrap();
        c.patch(&c.root(), r, DEFAULT_PATCH_CAP).unwrap()
    }

    #[test]
    fn square_patch_sizes() {
        let sq = corpus::square();
        let p0 = patch_of(&sq, 0);
        assert_eq!((p0.len(), p0.edges.len()), (1, 0));
        let p1 = patch_of(&sq, 1);
        assert_eq!((p1.len(), p1.edges.len()), (5, 4));
        // diamond |x|+|y| ≤ r has 2r²+2r+1 vertices
        for r in 0..8 {
            assert_eq!(patch_of(&sq, r).len(), 2 * r * r + 2 * r + 1);
        }
    }

    #[test]
    fn hexagonal_patch_radius_one() {
        let p = patch_of(&corpus::hexagonal(), 1);
        assert_eq!((p.len(), p.edges.len()), (4, 3));
    }

    #[test]
    fn interior_vertices_have_full_degree() {
        for pg in [corpus::square(), corpus::hexagonal(), corpus::leafed_square()] {
            let deg = pg.orbit_degrees();
            let p = patch_of(&pg, 5);
            for i in 0..p.len() {
                if p.is_interior(i) {
                    assert_eq!(p.adjacency[i].len(), deg[p.vertices[i].orbit]);
                }
            }
        }
    }

    #[test]
    fn ends() {
        assert_eq!(estimate_ends(&corpus::square(), 2, 8).unwrap(), 1);
        assert_eq!(estimate_ends(&corpus::path(), 1, 6).unwrap(), 2);
        assert_eq!(estimate_ends(&corpus::heptagonal_triangulation(), 1, 3).unwrap(), 1);
        assert!(estimate_ends(&corpus::square(), 3, 3).is_err());
    }

    #[test]
    fn connectivity_examples() {
        let c = |pg: PeriodicGraph| patch_connectivity(&patch_of(&pg, 6), 3).unwrap();
        assert_eq!(c(corpus::square()), Connectivity::AtLeast(3));
        assert_eq!(c(corpus::leafed_square()).value(), 1);
        assert_eq!(c(corpus::subdivided_square()).value(), 2);
        assert_eq!(c(corpus::hexagonal()), Connectivity::AtLeast(3));
    }

    /// Brute force over all vertex subsets of size k.
    fn brute_cuts(p: &Patch, k: usize) -> Vec<Vec<usize>> {
        let interior: Vec<usize> = (0..p.len()).filter(|&i| p.is_interior(i)).collect();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if interior.len() < k {
            return out;
        }
        loop {
            let cut: Vec<usize> = idx.iter().map(|&i| interior[i]).collect();
            if !separated_components(p, &cut).is_empty() {
                out.push(cut);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < interior.len() - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn articulation_cuts_match_brute_force() {
        for (pg, k) in [
            (corpus::leafed_square(), 1),
            (corpus::subdivided_square(), 2),
        ] {
            let p = patch_of(&pg, 4);
            assert_eq!(vertex_cuts(&p, k), brute_cuts(&p, k));
        }
    }
}
