use std::collections::BTreeMap;

use serde::Serialize;

use super::SimpleGraph;
use crate::error::{Error, Result};
use crate::voltage::{Cover, CoverVertex, Element, PeriodicGraph, SubgroupDescriptor, Voltage};

/// A vertex of the quotient by `T`: an orbit together with a residue of the
/// voltage lattice modulo `T`, or a class of `T`-cosets under the orbit's
/// stabiliser.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum QuotientVertex {
    Lattice { orbit: usize, residue: [i64; 2] },
    Cosets { orbit: usize, cosets: Vec<usize> },
}

impl QuotientVertex {
    pub fn orbit(&self) -> usize {
        match self {
            QuotientVertex::Lattice { orbit, .. } | QuotientVertex::Cosets { orbit, .. } => *orbit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Resolution {
    Lattice(BTreeMap<(usize, [i64; 2]), usize>),
    /// Per orbit, coset index to quotient vertex.
    Cosets(Vec<Vec<usize>>),
}

/// Finite quotient graph `Γ/T` together with the map sending each cover
/// vertex to its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub vertices: Vec<QuotientVertex>,
    pub graph: SimpleGraph,
    /// Edge count before collapsing parallel edges (half the degree sum).
    pub multi_edges: usize,
    resolution: Resolution,
}

impl QuotientGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Quotient vertex of a cover vertex.
    pub fn resolve(&self, t: &SubgroupDescriptor, v: &CoverVertex) -> usize {
        match (&self.resolution, &v.element) {
            (Resolution::Lattice(map), Element::Lattice(c)) => map[&(v.orbit, t.lattice_residue(*c))],
            (Resolution::Cosets(per_orbit), Element::Moebius(m)) => {
                let w = m.word().expect("cover elements carry words");
                per_orbit[v.orbit][t.coset_of(w)]
            }
            _ => panic!("cover vertex kind does not match the quotient"),
        }
    }

    /// Quotient vertex reached from quotient vertex `q` along a dart; for a
    /// class of cosets the smallest coset is the representative.
    pub fn dart_target(&self, pg: &PeriodicGraph, t: &SubgroupDescriptor, q: usize, dart: usize) -> usize {
        let d = &pg.darts[dart];
        match (&self.vertices[q], &self.resolution, &d.voltage) {
            (QuotientVertex::Lattice { residue, .. }, Resolution::Lattice(map), Voltage::Lattice(g)) => {
                map[&(d.v, t.lattice_residue([residue[0] + g[0], residue[1] + g[1]]))]
            }
            (QuotientVertex::Cosets { cosets, .. }, Resolution::Cosets(per_orbit), Voltage::Word(w)) => {
                per_orbit[d.v][t.table().expect("coset table").act(cosets[0], w)]
            }
            _ => panic!("dart kind does not match the quotient"),
        }
    }

    /// Quotient vertex of `(orbit, residue)` in a lattice quotient.
    pub fn lattice_vertex(&self, orbit: usize, residue: [i64; 2]) -> Option<usize> {
        match &self.resolution {
            Resolution::Lattice(map) => map.get(&(orbit, residue)).copied(),
            Resolution::Cosets(_) => None,
        }
    }
}

/// Error raised when `T` identifies two adjacent cover vertices.
pub fn quotient_loop_error(detail: String) -> Error {
    Error::Unsupported(format!(
        "subgroup too small: same-orbit adjacency ({detail}); use a subgroup with larger minimum translation"
    ))
}

/// Quotient of the cover by a finite-index subgroup; fails if some edge
/// joins a vertex to its own class.
pub fn quotient_mod_subgroup(pg: &PeriodicGraph, t: &SubgroupDescriptor) -> Result<QuotientGraph> {
    t.check_against(pg)?;
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}")));
    }
    match t {
        SubgroupDescriptor::Sublattice(_) => lattice_quotient(pg, t),
        SubgroupDescriptor::Cosets(_) => coset_quotient(pg, t),
    }
}

fn lattice_quotient(pg: &PeriodicGraph, t: &SubgroupDescriptor) -> Result<QuotientGraph> {
    let residues = t.lattice_residues();
    let mut vertices = Vec::new();
    let mut map = BTreeMap::new();
    for u in 0..pg.orbit_count {
        for r in &residues {
            map.insert((u, *r), vertices.len());
            vertices.push(QuotientVertex::Lattice {
                orbit: u,
                residue: *r,
            });
        }
    }
    let mut edges = Vec::new();
    let mut directed = 0usize;
    for (i, qv) in vertices.iter().enumerate() {
        let QuotientVertex::Lattice { orbit, residue } = qv else {
            unreachable!()
        };
        for d in pg.darts.iter().filter(|d| d.u == *orbit) {
            let Voltage::Lattice(g) = d.voltage else {
                unreachable!()
            };
            let j = map[&(d.v, t.lattice_residue([residue[0] + g[0], residue[1] + g[1]]))];
            if i == j {
                return Err(quotient_loop_error(format!(
                    "dart ({}, {}, {:?}) closes up at residue {:?}",
                    d.u, d.v, g, residue
                )));
            }
            directed += 1;
            edges.push((i, j));
        }
    }
    Ok(QuotientGraph {
        graph: SimpleGraph::from_edges(vertices.len(), edges)?,
        vertices,
        multi_edges: directed / 2,
        resolution: Resolution::Lattice(map),
    })
}

fn coset_quotient(pg: &PeriodicGraph, t: &SubgroupDescriptor) -> Result<QuotientGraph> {
    let table = t.table().unwrap();
    let n = table.degree();
    let mut vertices = Vec::new();
    let mut per_orbit = Vec::new();
    for u in 0..pg.orbit_count {
        let ids = match pg.stabiliser(u) {
            Some((w, _)) => table.orbits_of_word(w),
            None => (0..n).collect(),
        };
        let base = vertices.len();
        let classes = ids.iter().max().map_or(0, |m| m + 1);
        for c in 0..classes {
            let cosets: Vec<usize> = (0..n).filter(|&x| ids[x] == c).collect();
            vertices.push(QuotientVertex::Cosets { orbit: u, cosets });
        }
        per_orbit.push(ids.iter().map(|&c| base + c).collect::<Vec<usize>>());
    }
    let mut edges = Vec::new();
    for d in &pg.darts {
        let Voltage::Word(w) = &d.voltage else {
            unreachable!()
        };
        let perm = table.word_permutation(w);
        for c in 0..n {
            let i = per_orbit[d.u][c];
            let j = per_orbit[d.v][perm[c] as usize];
            if i == j {
                return Err(quotient_loop_error(format!(
                    "dart ({}, {}, {}) joins coset {c} to its own class",
                    d.u,
                    d.v,
                    pg.presentation().unwrap().format_word(w)
                )));
            }
            edges.push((i, j));
        }
    }
    let degrees = pg.orbit_degrees();
    let directed: usize = vertices.iter().map(|qv| degrees[qv.orbit()]).sum();
    Ok(QuotientGraph {
        graph: SimpleGraph::from_edges(vertices.len(), edges)?,
        vertices,
        multi_edges: directed / 2,
        resolution: Resolution::Cosets(per_orbit),
    })
}

/// Every cover vertex of a patch resolves consistently with adjacency:
/// used by tests and the verifier.
pub fn resolution_respects_edges(
    cover: &Cover,
    q: &QuotientGraph,
    t: &SubgroupDescriptor,
    radius: usize,
) -> Result<bool> {
    let patch = cover.patch(&cover.root(), radius, crate::voltage::DEFAULT_PATCH_CAP)?;
    Ok(patch.edges.iter().all(|&(a, b)| {
        let qa = q.resolve(t, &patch.vertices[a]);
        let qb = q.resolve(t, &patch.vertices[b]);
        q.graph.has_edge(qa, qb)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{todd_coxeter, triangle_group};
    use crate::io::corpus;

    #[test]
    fn square_mod_two_by_two() {
        let q = quotient_mod_subgroup(&corpus::square(), &SubgroupDescriptor::diagonal(2, 2).unwrap()).unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.multi_edges, 8);
        assert!((0..4).all(|v| q.graph.degree(v) == 2));
    }

    #[test]
    fn square_mod_everything_loops() {
        let e = quotient_mod_subgroup(&corpus::square(), &SubgroupDescriptor::diagonal(1, 1).unwrap())
            .unwrap_err();
        assert!(e.to_string().contains("subgroup too small"));
    }

    #[test]
    fn heptagonal_mod_klein_quartic_group() {
        let p = triangle_group(2, 3, 7).unwrap();
        let comm = p.parse_word("xyx^-1y^-1").unwrap();
        let table = todd_coxeter(&p.with_extra_relators(vec![comm.pow(4)]), &[], 20_000).unwrap();
        let t = SubgroupDescriptor::Cosets(table);
        let pg = corpus::heptagonal_triangulation();
        let q = quotient_mod_subgroup(&pg, &t).unwrap();
        assert_eq!(q.vertex_count(), 24);
        assert_eq!(q.multi_edges, 84);
        assert_eq!(q.graph.edge_count(), 84);
        assert!((0..24).all(|v| q.graph.degree(v) == 7));
        let cover = Cover::new(&pg).unwrap();
        assert!(resolution_respects_edges(&cover, &q, &t, 3).unwrap());
    }

    #[test]
    fn resolution_matches_lattice_adjacency() {
        for pg in [corpus::square(), corpus::hexagonal(), corpus::kings_square()] {
            let t = SubgroupDescriptor::diagonal(3, 3).unwrap();
            let q = quotient_mod_subgroup(&pg, &t).unwrap();
            let cover = Cover::new(&pg).unwrap();
            assert!(resolution_respects_edges(&cover, &q, &t, 6).unwrap());
        }
    }
}
