//! Line graphs, line-planarity checks, periodic edge colourings and
//! orientations read off a colouring.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colouring::{colour_pipeline, ColourSource, PeriodicColouring, PipelineOptions, PipelineReport};
use crate::error::{Error, Result, StageExt};
use crate::verify::vertex_label;
use crate::voltage::{
    Cover, CoverVertex, Dart, Element, GroupKind, Patch, PeriodicGraph, Voltage, DEFAULT_PATCH_CAP,
};

pub const DEFAULT_SCAN_RADIUS: usize = 6;

/// One dart per edge orbit: the smaller of each dart and its reverse.
pub fn edge_orbits(pg: &PeriodicGraph) -> Vec<Dart> {
    let set: BTreeSet<Dart> = pg
        .darts
        .iter()
        .map(|d| {
            let r = d.reverse();
            if r < *d {
                r
            } else {
                d.clone()
            }
        })
        .collect();
    set.into_iter().collect()
}

fn lattice_voltage(d: &Dart) -> [i64; 2] {
    d.voltage.as_lattice().expect("lattice voltage")
}

/// Line graph of a lattice graph. Vertex orbit `i` is edge orbit `i` of
/// [`edge_orbits`]; the cover vertex `(i, h)` is the edge from `(u, h)` to
/// `(v, h + g)`.
pub fn line_graph(pg: &PeriodicGraph) -> Result<PeriodicGraph> {
    if pg.kind() != GroupKind::EuclideanLattice {
        return Err(Error::Unsupported(
            "line graphs are built for lattice voltage groups only".into(),
        ));
    }
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}")));
    }
    let edges = edge_orbits(pg);
    let index_of = |d: &Dart| -> (usize, bool) {
        match edges.binary_search(d) {
            Ok(i) => (i, true),
            Err(_) => (edges.binary_search(&d.reverse()).expect("edge orbit"), false),
        }
    };
    let mut darts = BTreeSet::new();
    for (i, e) in edges.iter().enumerate() {
        let g = lattice_voltage(e);
        // (endpoint orbit, its position relative to the edge, dart to skip)
        for (w, base, skip) in [(e.u, [0, 0], e.clone()), (e.v, g, e.reverse())] {
            for d in pg.darts.iter().filter(|d| d.u == w && **d != skip) {
                let (j, forward) = index_of(d);
                let gd = lattice_voltage(d);
                // edge j starts at the shared endpoint, or ends there
                let off = if forward {
                    base
                } else {
                    [base[0] + gd[0], base[1] + gd[1]]
                };
                darts.insert(Dart::lattice(i, j, off[0], off[1]));
            }
        }
    }
    let geometry = edges
        .iter()
        .map(|e| {
            let (p, q) = (pg.geometry[e.u], pg.geometry[e.v]);
            let t = pg.translation_f64(lattice_voltage(e));
            [(p[0] + q[0] + t[0]) / 2.0, (p[1] + q[1] + t[1]) / 2.0]
        })
        .collect();
    let lg = PeriodicGraph {
        orbit_count: edges.len(),
        darts: darts.into_iter().collect(),
        geometry,
        group: pg.group.clone(),
        name: pg.name.as_ref().map(|n| format!("line({n})")),
    };
    let report = lg.validate();
    if !report.is_pass() {
        return Err(Error::Internal(format!("line graph is invalid: {report}")));
    }
    Ok(lg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineRoute {
    /// Maximum degree at most 4 and every degree-4 vertex a cut vertex.
    DegreeCut,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinePlanarityReport {
    pub route: LineRoute,
    pub radius: usize,
    pub max_degree: usize,
    /// No K3,3, K1,5, P4+K1 or K2+3K1 subgraph met within the radius.
    pub forbidden_free_within_radius: bool,
    pub witnesses: Vec<Witness>,
}

impl LinePlanarityReport {
    pub fn pass(&self) -> bool {
        self.route != LineRoute::Fail
    }

    pub fn summary(&self) -> String {
        match self.route {
            LineRoute::DegreeCut => format!(
                "maximum degree {} and no non-cut degree-4 vertex within radius {}",
                self.max_degree, self.radius
            ),
            LineRoute::Fail => {
                let kinds: Vec<&str> = self.witnesses.iter().map(|w| w.kind.as_str()).collect();
                format!("line graph not shown planar: {}", kinds.join(", "))
            }
        }
    }
}

/// Components of `patch − v`; `true` when `v` separates something inside
/// the patch (a component avoiding the sphere, or two sphere components).
fn separates_in_patch(patch: &Patch, v: usize) -> bool {
    let n = patch.len();
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut comps = 0;
    let mut enclosed = false;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        let mut touches = false;
        while let Some(x) = stack.pop() {
            touches |= patch.distance[x] == patch.radius;
            for &y in &patch.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        enclosed |= !touches;
    }
    enclosed || comps > 1
}

fn common(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn sorted_adjacency(patch: &Patch) -> Vec<Vec<usize>> {
    patch
        .adjacency
        .iter()
        .map(|a| {
            let mut a = a.clone();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect()
}

/// Forbidden subgraphs anchored at interior vertices of the patch; at most
/// one witness of each kind.
fn forbidden_scan(patch: &Patch) -> Vec<(String, Vec<usize>)> {
    let adj = sorted_adjacency(patch);
    let interior: Vec<usize> = (0..patch.len()).filter(|&i| patch.is_interior(i)).collect();
    let mut out = Vec::new();
    if let Some(&v) = interior.iter().find(|&&v| adj[v].len() >= 5) {
        let mut w = vec![v];
        w.extend(&adj[v][..5]);
        out.push(("K1,5".to_string(), w));
    }
    'k2: for &a in &interior {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            let c = common(&adj[a], &adj[b]);
            if c.len() >= 3 {
                out.push(("K2+3K1".to_string(), vec![a, b, c[0], c[1], c[2]]));
                break 'k2;
            }
        }
    }
    'fan: for &v in &interior {
        let nb = &adj[v];
        // simple path on four neighbours of v
        for &a in nb {
            for &b in common(&adj[a], nb).iter() {
                for &c in common(&adj[b], nb).iter().filter(|&&c| c != a) {
                    if let Some(&d) = common(&adj[c], nb).iter().find(|&&d| d != a && d != b) {
                        out.push(("P4+K1".to_string(), vec![v, a, b, c, d]));
                        break 'fan;
                    }
                }
            }
        }
    }
    'k33: for &a in &interior {
        let two: BTreeSet<usize> = adj[a]
            .iter()
            .flat_map(|&x| adj[x].iter().copied())
            .filter(|&y| y > a)
            .collect();
        let two: Vec<usize> = two.into_iter().collect();
        for (i, &b) in two.iter().enumerate() {
            let ab = common(&adj[a], &adj[b]);
            if ab.len() < 3 {
                continue;
            }
            for &c in &two[i + 1..] {
                let abc: Vec<usize> = common(&ab, &adj[c]);
                if abc.len() >= 3 {
                    out.push(("K3,3".to_string(), vec![a, b, c, abc[0], abc[1], abc[2]]));
                    break 'k33;
                }
            }
        }
    }
    out
}

/// Decide whether the line graph is planar from the degree and cut-vertex
/// conditions, and scan the radius-`r` patch for forbidden subgraphs.
/// Forbidden subgraphs only ever reject.
pub fn line_planarity_check(pg: &PeriodicGraph, r: usize) -> Result<LinePlanarityReport> {
    if r < 4 {
        return Err(Error::argument("line-planarity scan needs radius at least 4"));
    }
    let cover = Cover::new(pg)?;
    let degrees = pg.orbit_degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mut witnesses = Vec::new();
    let label = |p: &Patch, i: usize| vertex_label(pg, &p.vertices[i]);
    for (u, &d) in degrees.iter().enumerate() {
        if d == 4 {
            let patch = cover.patch(&cover.base_vertex(u), r, DEFAULT_PATCH_CAP)?;
            if !separates_in_patch(&patch, 0) {
                witnesses.push(Witness {
                    kind: "degree-4 non-cut vertex".into(),
                    vertices: vec![label(&patch, 0)],
                });
            }
        }
    }
    let mut forbidden_free = true;
    for u in 0..pg.orbit_count {
        let patch = cover.patch(&cover.base_vertex(u), r, DEFAULT_PATCH_CAP)?;
        for (kind, vs) in forbidden_scan(&patch) {
            forbidden_free = false;
            if !witnesses.iter().any(|w| w.kind == kind) {
                witnesses.push(Witness {
                    kind,
                    vertices: vs.iter().map(|&i| label(&patch, i)).collect(),
                });
            }
        }
    }
    let route = if max_degree <= 4 && witnesses.is_empty() {
        LineRoute::DegreeCut
    } else {
        LineRoute::Fail
    };
    Ok(LinePlanarityReport {
        route,
        radius: r,
        max_degree,
        forbidden_free_within_radius: forbidden_free,
        witnesses,
    })
}

/// A periodic edge colouring: a periodic vertex colouring of the line graph.
#[derive(Clone, Debug)]
pub struct EdgeColouring {
    pub edge_orbits: Vec<Dart>,
    pub line_graph: PeriodicGraph,
    pub colouring: PeriodicColouring,
    pub check: LinePlanarityReport,
    pub report: PipelineReport,
}

impl EdgeColouring {
    /// Colour of the cover edge leaving `v` along dart `dart` of the
    /// original graph.
    pub fn colour_of_edge(&self, pg: &PeriodicGraph, v: &CoverVertex, dart: usize) -> u32 {
        let d = &pg.darts[dart];
        let Element::Lattice(h) = v.element else {
            unreachable!("lattice graph")
        };
        let (i, h) = match self.edge_orbits.binary_search(d) {
            Ok(i) => (i, h),
            Err(_) => {
                let i = self.edge_orbits.binary_search(&d.reverse()).expect("edge orbit");
                let g = lattice_voltage(d);
                (i, [h[0] + g[0], h[1] + g[1]])
            }
        };
        self.colouring.colour_of(&CoverVertex {
            orbit: i,
            element: Element::Lattice(h),
        })
    }
}

pub fn periodic_edge_colouring(pg: &PeriodicGraph, opts: &PipelineOptions) -> Result<EdgeColouring> {
    crate::colouring::check_one_end(pg).stage("ends")?;
    let check = line_planarity_check(pg, DEFAULT_SCAN_RADIUS).stage("line-planarity")?;
    if !check.pass() {
        return Err(Error::Unsupported(format!(
            "{}; no periodic edge colouring construction is known without a planar line graph",
            check.summary()
        )))
        .stage("line-planarity");
    }
    let lg = line_graph(pg).stage("line-graph")?;
    let out = colour_pipeline(&lg, opts).stage("colour")?;
    Ok(EdgeColouring {
        edge_orbits: edge_orbits(pg),
        line_graph: lg,
        colouring: out.colouring,
        check,
        report: out.report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceReport {
    pub radius: usize,
    pub vertices: usize,
    /// Vertices with two incident edges of one colour.
    pub clashes: Vec<String>,
    pub pass: bool,
}

/// Edges meeting at a vertex get distinct colours, on the radius-`r` patch
/// of the original graph.
pub fn check_edge_colouring(ec: &EdgeColouring, pg: &PeriodicGraph, r: usize) -> Result<IncidenceReport> {
    let cover = Cover::new(pg)?;
    let patch = cover.patch(&cover.root(), r, DEFAULT_PATCH_CAP)?;
    let mut clashes = Vec::new();
    for v in &patch.vertices {
        let colours: Vec<u32> = pg.darts_from(v.orbit).map(|(i, _)| ec.colour_of_edge(pg, v, i)).collect();
        let distinct: BTreeSet<u32> = colours.iter().copied().collect();
        if distinct.len() != colours.len() {
            clashes.push(vertex_label(pg, v));
        }
    }
    Ok(IncidenceReport {
        radius: r,
        vertices: patch.len(),
        pass: clashes.is_empty(),
        clashes,
    })
}

/// Orientation of every edge from its lower-coloured end to its
/// higher-coloured end.
#[derive(Clone, Debug, Serialize)]
pub struct Orientation {
    /// For quotient vertex `q` and the darts leaving its orbit (in dart
    /// order), whether the edge points away from `q`.
    pub forward: Vec<Vec<bool>>,
    #[serde(skip)]
    pub colouring: PeriodicColouring,
}

impl Orientation {
    /// Whether the edge leaving `v` along `dart` points away from `v`.
    pub fn is_forward(&self, cover: &Cover, v: &CoverVertex, dart: usize) -> bool {
        self.colouring.colour_of(v) < self.colouring.colour_of(&cover.step(v, dart))
    }
}

pub fn periodic_orientation(pc: &PeriodicColouring, pg: &PeriodicGraph) -> Result<Orientation> {
    pc.subgroup.check_against(pg)?;
    let conflicts = pc.quotient_conflicts();
    if !conflicts.is_empty() {
        return Err(Error::argument(format!(
            "colouring is improper on {} quotient edge(s), first {:?}",
            conflicts.len(),
            conflicts[0]
        )));
    }
    let forward = (0..pc.quotient.vertex_count())
        .map(|q| {
            let orbit = pc.quotient.vertices[q].orbit();
            pg.darts_from(orbit)
                .map(|(i, _)| {
                    let target = pc.quotient.dart_target(pg, &pc.subgroup, q, i);
                    pc.colours[q] < pc.colours[target]
                })
                .collect()
        })
        .collect();
    Ok(Orientation {
        forward,
        colouring: pc.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub radius: usize,
    pub edges: usize,
    pub antisymmetry_failures: usize,
    pub invariance_failures: usize,
    pub pass: bool,
}

/// Each patch edge is oriented exactly one way, and orientations agree
/// across translates by the subgroup generators.
pub fn check_orientation(o: &Orientation, pg: &PeriodicGraph, r: usize) -> Result<OrientationReport> {
    let cover = Cover::new(pg)?;
    let patch = cover.patch(&cover.root(), r, DEFAULT_PATCH_CAP)?;
    let gens: Vec<Element> = o
        .colouring
        .subgroup
        .generators()
        .iter()
        .map(|g| cover.element_of(g))
        .collect();
    let mut edges = 0;
    let mut anti = 0;
    let mut inv = 0;
    for v in &patch.vertices {
        for (i, d) in pg.darts_from(v.orbit) {
            let w = cover.step(v, i);
            let back = pg
                .darts
                .iter()
                .position(|e| *e == d.reverse())
                .expect("reverse dart");
            edges += 1;
            if o.is_forward(&cover, v, i) == o.is_forward(&cover, &w, back) {
                anti += 1;
            }
            for t in &gens {
                if o.is_forward(&cover, &cover.translate(t, v), i) != o.is_forward(&cover, v, i) {
                    inv += 1;
                }
            }
        }
    }
    Ok(OrientationReport {
        radius: r,
        edges,
        antisymmetry_failures: anti,
        invariance_failures: inv,
        pass: anti == 0 && inv == 0,
    })
}

/// Darts of a lattice graph as `(u, v, voltage)` records.
pub fn dart_voltages(pg: &PeriodicGraph) -> Vec<(usize, usize, Voltage)> {
    pg.darts.iter().map(|d| (d.u, d.v, d.voltage.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{colour_quotient, lift_colouring, quotient_mod_subgroup, Strategy};
    use crate::io::corpus;
    use crate::voltage::SubgroupDescriptor;

    #[test]
    fn line_graph_degrees() {
        let lg = line_graph(&corpus::square()).unwrap();
        assert_eq!(lg.orbit_count, 2);
        assert!(lg.orbit_degrees().iter().all(|&d| d == 6));
        let lg = line_graph(&corpus::hexagonal()).unwrap();
        assert_eq!(lg.orbit_count, 3);
        assert!(lg.orbit_degrees().iter().all(|&d| d == 4));
        let lg = line_graph(&corpus::path()).unwrap();
        assert_eq!(lg.orbit_degrees(), vec![2]);
    }

    #[test]
    fn planarity_routes() {
        let rep = line_planarity_check(&corpus::hexagonal(), 6).unwrap();
        assert_eq!(rep.route, LineRoute::DegreeCut);
        let rep = line_planarity_check(&corpus::square(), 6).unwrap();
        assert_eq!(rep.route, LineRoute::Fail);
        assert!(rep.witnesses.iter().any(|w| w.kind == "degree-4 non-cut vertex"));
        let rep = line_planarity_check(&corpus::star_hexagonal(), 6).unwrap();
        assert!(rep.witnesses.iter().any(|w| w.kind == "K1,5"));
        let rep = line_planarity_check(&corpus::kings_square(), 4).unwrap();
        assert!(rep.witnesses.iter().any(|w| w.kind == "K2+3K1"));
    }

    #[test]
    fn hexagonal_edge_colouring() {
        let pg = corpus::hexagonal();
        let ec = periodic_edge_colouring(&pg, &PipelineOptions::default()).unwrap();
        assert!(ec.colouring.palette >= 3);
        assert!(check_edge_colouring(&ec, &pg, 8).unwrap().pass);
        let e = periodic_edge_colouring(&corpus::square(), &PipelineOptions::default()).unwrap_err();
        assert!(matches!(e.root(), Error::Unsupported(_)));
        let e = periodic_edge_colouring(&corpus::path(), &PipelineOptions::default()).unwrap_err();
        assert!(e.to_string().contains("end estimate"));
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
    fn checkerboard_orientation() {
        let pg = corpus::square();
        let pc = checkerboard();
        let o = periodic_orientation(&pc, &pg).unwrap();
        let rep = check_orientation(&o, &pg, 8).unwrap();
        assert!(rep.pass, "{rep:?}");
        for (q, row) in o.forward.iter().enumerate() {
            assert!(row.iter().all(|&f| f == (pc.colours[q] == 0)));
        }
        let mut bad = pc.clone();
        bad.colours = vec![0; bad.colours.len()];
        assert!(matches!(periodic_orientation(&bad, &pg), Err(Error::Argument(_))));
    }
}
