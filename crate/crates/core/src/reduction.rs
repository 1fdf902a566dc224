//! Reduction of a periodic graph with small separators to a 3-connected
//! one, and reattachment of the removed atoms to a colouring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::colouring::{lift_colouring, quotient_mod_subgroup, PeriodicColouring, QuotientColouring, QuotientVertex};
use crate::error::{Error, Result};
use crate::voltage::{
    build_patch, patch_connectivity, separated_components, vertex_cuts, Connectivity, CoverVertex, Dart,
    Element, GroupKind, Patch, PeriodicGraph, Voltage,
};

pub const DEFAULT_ATOM_RADIUS: usize = 4;
/// Radius at which connectivity of a Fuchsian cover is measured.
const FUCHSIAN_RADIUS: usize = 3;

/// Cover vertex of a lattice graph as `(orbit, coordinates)`.
pub type LatticeVertex = (usize, [i64; 2]);

/// An orbit of atoms under the translation lattice. The representative is
/// translated so that its smallest vertex sits at the origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AtomOrbit {
    pub representative: Vec<LatticeVertex>,
    pub boundary: Vec<LatticeVertex>,
    pub connectivity_case: u8,
}

impl AtomOrbit {
    pub fn representative_vertices(&self) -> Vec<CoverVertex> {
        self.representative.iter().map(|&v| cover_vertex(v)).collect()
    }

    pub fn boundary_vertices(&self) -> Vec<CoverVertex> {
        self.boundary.iter().map(|&v| cover_vertex(v)).collect()
    }

    /// Orbits met by the representative.
    pub fn orbits(&self) -> BTreeSet<usize> {
        self.representative.iter().map(|v| v.0).collect()
    }
}

fn cover_vertex((orbit, c): LatticeVertex) -> CoverVertex {
    CoverVertex {
        orbit,
        element: Element::Lattice(c),
    }
}

/// A dart written as `(u, v, voltage)`.
pub type DartRecord = (usize, usize, [i64; 2]);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub connectivity_case: u8,
    pub atoms: Vec<AtomOrbit>,
    pub removed_orbits: Vec<usize>,
    /// Old orbit index to new orbit index.
    pub orbit_map: Vec<Option<usize>>,
    /// Darts inserted across two-vertex separators (new orbit indices).
    pub inserted: Vec<DartRecord>,
    /// Inserted darts that already existed and were merged.
    pub merged: Vec<DartRecord>,
    pub orbits_before: usize,
    pub orbits_after: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// `graphs[i]` is the graph before step `i`; the last entry is the
    /// fully reduced graph.
    #[serde(skip)]
    pub graphs: Vec<PeriodicGraph>,
    /// Connectivity of the final graph.
    pub final_connectivity: String,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn original(&self) -> &PeriodicGraph {
        &self.graphs[0]
    }

    pub fn reduced(&self) -> &PeriodicGraph {
        self.graphs.last().unwrap()
    }
}

fn require_lattice(pg: &PeriodicGraph) -> Result<()> {
    if pg.kind() != GroupKind::EuclideanLattice {
        return Err(Error::Unsupported(
            "atom detection is implemented for lattice voltage groups".into(),
        ));
    }
    Ok(())
}

fn lattice_vertex(v: &CoverVertex) -> LatticeVertex {
    match v.element {
        Element::Lattice(c) => (v.orbit, c),
        Element::Moebius(_) => unreachable!("lattice graph expected"),
    }
}

/// Neighbours of a vertex set outside it.
fn outer_boundary(patch: &Patch, set: &[usize]) -> Vec<usize> {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &v in set {
        for &w in &patch.adjacency[v] {
            if !inside.contains(&w) {
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

fn canonical(patch: &Patch, frag: &[usize], cut: &[usize], k: usize) -> AtomOrbit {
    let mut rep: Vec<LatticeVertex> = frag.iter().map(|&i| lattice_vertex(&patch.vertices[i])).collect();
    rep.sort();
    let shift = rep[0].1;
    let tr = |(o, c): LatticeVertex| (o, [c[0] - shift[0], c[1] - shift[1]]);
    let mut boundary: Vec<LatticeVertex> = cut.iter().map(|&i| tr(lattice_vertex(&patch.vertices[i]))).collect();
    boundary.sort();
    AtomOrbit {
        representative: rep.into_iter().map(tr).collect(),
        boundary,
        connectivity_case: k as u8,
    }
}

/// Connectivity and atom orbits seen in one patch.
fn atoms_in_patch(pg: &PeriodicGraph, r: usize) -> Result<(Connectivity, BTreeSet<AtomOrbit>)> {
    let patch = build_patch(pg, &root_of(pg)?, r)?;
    let conn = patch_connectivity(&patch, 3)?;
    let Connectivity::Exact { k, .. } = conn else {
        return Ok((conn, BTreeSet::new()));
    };
    let mut fragments: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for cut in vertex_cuts(&patch, k) {
        for comp in separated_components(&patch, &cut) {
            if outer_boundary(&patch, &comp) == cut {
                fragments.insert((comp, cut.clone()));
            }
        }
    }
    let sets: Vec<BTreeSet<usize>> = fragments.iter().map(|f| f.0.iter().copied().collect()).collect();
    let mut atoms = BTreeSet::new();
    for (i, (frag, cut)) in fragments.iter().enumerate() {
        let minimal = !sets
            .iter()
            .enumerate()
            .any(|(j, s)| j != i && s.len() < sets[i].len() && s.is_subset(&sets[i]));
        if minimal {
            atoms.insert(canonical(&patch, frag, cut, k));
        }
    }
    Ok((conn, atoms))
}

fn root_of(pg: &PeriodicGraph) -> Result<CoverVertex> {
    if pg.orbit_count == 0 {
        return Err(Error::argument("graph has no vertices"));
    }
    Ok(match pg.kind() {
        GroupKind::EuclideanLattice => cover_vertex((0, [0, 0])),
        GroupKind::Fuchsian => crate::voltage::Cover::new(pg)?.root(),
    })
}

/// Atom orbits found on patches of radius `r0` and `2·r0`; `None` when the
/// graph looks 3-connected.
fn scan_atoms(pg: &PeriodicGraph, r0: usize) -> Result<Option<Vec<AtomOrbit>>> {
    require_lattice(pg)?;
    let (c1, a1) = atoms_in_patch(pg, r0)?;
    let (c2, a2) = atoms_in_patch(pg, 2 * r0)?;
    if c1.value() != c2.value() || a1 != a2 {
        return Err(Error::resource(format!(
            "atom orbits did not stabilise between radius {r0} (κ = {c1}, {} orbits) and radius {} (κ = {c2}, {} orbits); retry with a larger radius",
            a1.len(),
            2 * r0,
            a2.len()
        )));
    }
    if matches!(c2, Connectivity::AtLeast(_)) {
        return Ok(None);
    }
    Ok(Some(a2.into_iter().collect()))
}

/// Orbits of inclusion-minimal fragments with the smallest separator size,
/// detected on patches of radius `r0` and `2·r0` and required to agree.
pub fn find_atom_orbits(pg: &PeriodicGraph, r0: usize) -> Result<Vec<AtomOrbit>> {
    scan_atoms(pg, r0)?
        .ok_or_else(|| Error::argument("graph has no separator of size 1 or 2 (κ ≥ 3); nothing to reduce"))
}

/// One reduction step: delete the atoms and, for two-vertex separators,
/// join the separator by a dart.
pub fn reduce_once(pg: &PeriodicGraph, atoms: &[AtomOrbit]) -> Result<(PeriodicGraph, ReductionStep)> {
    require_lattice(pg)?;
    let case = match atoms.first() {
        Some(a) => a.connectivity_case,
        None => return Err(Error::argument("no atom orbits to remove")),
    };
    if atoms.iter().any(|a| a.connectivity_case != case || a.boundary.len() != case as usize) {
        return Err(Error::argument("atom orbits disagree on the separator size"));
    }
    let removed: BTreeSet<usize> = atoms.iter().flat_map(|a| a.orbits()).collect();
    if atoms.iter().flat_map(|a| &a.boundary).any(|b| removed.contains(&b.0)) {
        return Err(Error::Internal("an atom boundary lies in a removed orbit".into()));
    }
    let mut orbit_map = vec![None; pg.orbit_count];
    let mut next = 0;
    for (u, slot) in orbit_map.iter_mut().enumerate() {
        if !removed.contains(&u) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut darts: BTreeSet<Dart> = pg
        .darts
        .iter()
        .filter_map(|d| Some(Dart::new(orbit_map[d.u]?, orbit_map[d.v]?, d.voltage.clone())))
        .collect();
    let mut inserted = Vec::new();
    let mut merged = Vec::new();
    if case == 2 {
        for a in atoms {
            let [(ou, cu), (ov, cv)] = [a.boundary[0], a.boundary[1]];
            let g = [cv[0] - cu[0], cv[1] - cu[1]];
            let rec = (orbit_map[ou].unwrap(), orbit_map[ov].unwrap(), g);
            let d = Dart::lattice(rec.0, rec.1, g[0], g[1]);
            if darts.contains(&d) {
                merged.push(rec);
            } else {
                darts.insert(d.reverse());
                darts.insert(d);
                inserted.push(rec);
            }
        }
    }
    let reduced = PeriodicGraph {
        orbit_count: next,
        darts: darts.into_iter().collect(),
        geometry: (0..pg.orbit_count)
            .filter(|u| !removed.contains(u))
            .map(|u| pg.geometry[u])
            .collect(),
        group: pg.group.clone(),
        name: pg.name.clone(),
    };
    let report = reduced.validate();
    if !report.is_pass() {
        return Err(Error::Internal(format!("reduced graph is invalid: {report}")));
    }
    let step = ReductionStep {
        connectivity_case: case,
        atoms: atoms.to_vec(),
        removed_orbits: removed.into_iter().collect(),
        orbit_map,
        inserted,
        merged,
        orbits_before: pg.orbit_count,
        orbits_after: next,
    };
    Ok((reduced, step))
}

/// Repeatedly remove atoms until no separator of size 1 or 2 remains.
pub fn reduce_to_3connected(pg: &PeriodicGraph) -> Result<(PeriodicGraph, ReductionTrace)> {
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}")));
    }
    if pg.kind() == GroupKind::Fuchsian {
        let patch = build_patch(pg, &root_of(pg)?, FUCHSIAN_RADIUS)?;
        let conn = patch_connectivity(&patch, 3)?;
        if conn.value() < 3 {
            return Err(Error::Unsupported(format!(
                "reduction over Fuchsian groups is not implemented (κ = {conn})"
            )));
        }
        return Ok((
            pg.clone(),
            ReductionTrace {
                steps: Vec::new(),
                graphs: vec![pg.clone()],
                final_connectivity: conn.to_string(),
            },
        ));
    }
    let mut graphs = vec![pg.clone()];
    let mut steps = Vec::new();
    for _ in 0..=pg.orbit_count {
        let current = graphs.last().unwrap();
        match scan_atoms(current, DEFAULT_ATOM_RADIUS)? {
            None => {
                let patch = build_patch(current, &root_of(current)?, 2 * DEFAULT_ATOM_RADIUS)?;
                let conn = patch_connectivity(&patch, 3)?;
                return Ok((
                    current.clone(),
                    ReductionTrace {
                        steps,
                        graphs,
                        final_connectivity: conn.to_string(),
                    },
                ));
            }
            Some(atoms) => {
                let (next, step) = reduce_once(current, &atoms)?;
                if next.orbit_count >= current.orbit_count {
                    return Err(Error::Internal("reduction step did not remove any orbit".into()));
                }
                steps.push(step);
                graphs.push(next);
            }
        }
    }
    Err(Error::Internal("reduction exceeded its iteration cap".into()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaletteMode {
    /// Greedy extension with the smallest colour not on a neighbour.
    #[default]
    Reuse,
    /// Atom vertices only use colours above the incoming palette.
    Fresh,
}

impl FromStr for PaletteMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reuse" => Ok(PaletteMode::Reuse),
            "fresh" => Ok(PaletteMode::Fresh),
            _ => Err(Error::argument(format!("unknown palette mode {s:?}; expected reuse or fresh"))),
        }
    }
}

impl fmt::Display for PaletteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PaletteMode::Reuse => "reuse",
            PaletteMode::Fresh => "fresh",
        })
    }
}

/// Palette growth during reattachment, per replayed step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReattachReport {
    /// `(step, palette before, palette after)` whenever the palette grew.
    pub widened: Vec<(usize, usize, usize)>,
}

/// Replay the trace backwards, colouring each atom translate greedily from
/// its boundary. The colouring is defined on the quotient by the same
/// subgroup, so every translate of an atom gets the same colours.
pub fn reattach_atoms(
    pc: &PeriodicColouring,
    trace: &ReductionTrace,
    mode: PaletteMode,
) -> Result<(PeriodicColouring, ReattachReport)> {
    let mut current = pc.clone();
    let mut report = ReattachReport::default();
    let t = &pc.subgroup;
    for (i, step) in trace.steps.iter().enumerate().rev() {
        let g = &trace.graphs[i];
        let q = quotient_mod_subgroup(g, t)?;
        let mut colours: Vec<Option<u32>> = q
            .vertices
            .iter()
            .map(|qv| match qv {
                QuotientVertex::Lattice { orbit, residue } => step.orbit_map[*orbit].map(|n| {
                    let j = current
                        .quotient
                        .lattice_vertex(n, *residue)
                        .expect("surviving orbit has a quotient vertex");
                    current.colours[j]
                }),
                QuotientVertex::Cosets { .. } => None,
            })
            .collect();
        let start = match mode {
            PaletteMode::Reuse => 0,
            PaletteMode::Fresh => current.palette as u32,
        };
        let mut order = Vec::new();
        for atom in &step.atoms {
            for base in t.lattice_residues() {
                for &(o, c) in &atom.representative {
                    let r = t.lattice_residue([base[0] + c[0], base[1] + c[1]]);
                    order.push(q.lattice_vertex(o, r).expect("atom vertex in quotient"));
                }
            }
        }
        for v in order {
            if colours[v].is_some() {
                continue;
            }
            let used: BTreeSet<u32> = q.graph.neighbours(v).iter().filter_map(|&w| colours[w]).collect();
            colours[v] = Some((start..).find(|c| !used.contains(c)).unwrap());
        }
        let colours: Vec<u32> = colours
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Internal("reattachment left a vertex uncoloured".into()))?;
        let qc = QuotientColouring::new(colours);
        if qc.palette > current.palette {
            report.widened.push((i, current.palette, qc.palette));
        }
        current = lift_colouring(qc, q, t.clone())?;
    }
    Ok((current, report))
}

/// Orbit count of every stage, first to last.
pub fn stage_orbit_counts(trace: &ReductionTrace) -> Vec<usize> {
    trace.graphs.iter().map(|g| g.orbit_count).collect()
}

/// Darts of a graph as records, for lattice graphs.
pub fn dart_records(pg: &PeriodicGraph) -> Vec<DartRecord> {
    pg.darts
        .iter()
        .filter_map(|d| match d.voltage {
            Voltage::Lattice(g) => Some((d.u, d.v, g)),
            Voltage::Word(_) => None,
        })
        .collect()
}

/// Lattice vertices of a patch, indexed as in the patch.
pub fn patch_lattice_vertices(patch: &Patch) -> BTreeMap<LatticeVertex, usize> {
    patch
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(i, v)| match v.element {
            Element::Lattice(c) => Some(((v.orbit, c), i)),
            Element::Moebius(_) => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{colour_quotient, Strategy};
    use crate::io::corpus;
    use crate::voltage::SubgroupDescriptor;

    #[test]
    fn leaf_atoms() {
        let atoms = find_atom_orbits(&corpus::leafed_square(), 4).unwrap();
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].representative, vec![(1, [0, 0])]);
        assert_eq!(atoms[0].boundary, vec![(0, [0, 0])]);
        assert_eq!(atoms[0].connectivity_case, 1);
    }

    #[test]
    fn subdivision_atoms() {
        let atoms = find_atom_orbits(&corpus::subdivided_square(), 4).unwrap();
        assert_eq!(atoms.len(), 2);
        for a in &atoms {
            assert_eq!(a.representative.len(), 1);
            assert_eq!(a.boundary.len(), 2);
        }
        assert!(find_atom_orbits(&corpus::square(), 4).is_err());
    }

    #[test]
    fn single_steps() {
        let pg = corpus::leafed_square();
        let (r, _) = reduce_once(&pg, &find_atom_orbits(&pg, 4).unwrap()).unwrap();
        assert_eq!(r.orbit_count, 1);
        assert_eq!(r.darts, corpus::square().darts);

        let pg = corpus::subdivided_square();
        let (r, step) = reduce_once(&pg, &find_atom_orbits(&pg, 4).unwrap()).unwrap();
        assert_eq!(r.darts, corpus::square().darts);
        assert_eq!(step.inserted.len(), 2);

        let pg = corpus::two_leaf_square();
        let (r, step) = reduce_once(&pg, &find_atom_orbits(&pg, 4).unwrap()).unwrap();
        assert_eq!(r.orbit_count, 1);
        assert_eq!(step.removed_orbits, vec![1, 2]);
    }

    #[test]
    fn full_reduction() {
        let (r, trace) = reduce_to_3connected(&corpus::leafed_subdivided_square()).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(r.darts, corpus::square().darts);
        assert_eq!(stage_orbit_counts(&trace), vec![4, 3, 1]);
        for pg in [corpus::square(), corpus::hexagonal()] {
            assert!(reduce_to_3connected(&pg).unwrap().1.is_empty());
        }
    }

    fn checkerboard() -> PeriodicColouring {
        let pg = corpus::square();
        let t = SubgroupDescriptor::diagonal(2, 2).unwrap();
        let q = quotient_mod_subgroup(&pg, &t).unwrap();
        let qc = colour_quotient(&q.graph, Strategy::Exact { k: 2, node_budget: 100 })
            .unwrap()
            .unwrap();
        lift_colouring(qc, q, t).unwrap()
    }

    #[test]
    fn reattach_leaves_and_subdivisions() {
        let (_, trace) = reduce_to_3connected(&corpus::leafed_square()).unwrap();
        let (pc, rep) = reattach_atoms(&checkerboard(), &trace, PaletteMode::Reuse).unwrap();
        assert_eq!(pc.palette, 2);
        assert!(rep.widened.is_empty());
        assert!(pc.quotient_conflicts().is_empty());

        let (_, trace) = reduce_to_3connected(&corpus::subdivided_square()).unwrap();
        let (pc, rep) = reattach_atoms(&checkerboard(), &trace, PaletteMode::Reuse).unwrap();
        assert_eq!(pc.palette, 3);
        assert_eq!(rep.widened, vec![(0, 2, 3)]);

        let (_, trace) = reduce_to_3connected(&corpus::square()).unwrap();
        let (pc, _) = reattach_atoms(&checkerboard(), &trace, PaletteMode::Reuse).unwrap();
        assert_eq!(pc, checkerboard());
    }

    #[test]
    fn fresh_mode_opens_new_colours() {
        let (_, trace) = reduce_to_3connected(&corpus::leafed_square()).unwrap();
        let (pc, _) = reattach_atoms(&checkerboard(), &trace, PaletteMode::Fresh).unwrap();
        assert_eq!(pc.palette, 3);
        assert!(pc.quotient_conflicts().is_empty());
    }
}
