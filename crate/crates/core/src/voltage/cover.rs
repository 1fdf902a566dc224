use std::cmp::Ordering;

use super::{PeriodicGraph, Voltage, VoltageGroup};
use crate::error::{Error, Result};
use crate::hyp::{MoebiusMatrix, Word, DEDUP_EPS};

/// Group element naming a cover vertex within its orbit.
#[derive(Clone, Debug)]
pub enum Element {
    Lattice([i64; 2]),
    /// Coset representative, carrying its word.
    Moebius(MoebiusMatrix),
}

impl Element {
    pub fn word(&self) -> Option<&Word> {
        match self {
            Element::Moebius(m) => m.word(),
            Element::Lattice(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverVertex {
    pub orbit: usize,
    pub element: Element,
}

/// Canonical identity of a cover vertex; orders by orbit, then by lattice
/// coordinates or by disc position (compared with tolerance).
#[derive(Clone, Copy, Debug)]
pub enum VertexKey {
    Lattice(usize, [i64; 2]),
    Disc(usize, [f64; 2]),
}

impl VertexKey {
    pub fn orbit(&self) -> usize {
        match self {
            VertexKey::Lattice(o, _) | VertexKey::Disc(o, _) => *o,
        }
    }
}

impl PartialEq for VertexKey {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for VertexKey {}
impl PartialOrd for VertexKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for VertexKey {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (VertexKey::Lattice(a, p), VertexKey::Lattice(b, q)) => (a, p).cmp(&(b, q)),
            (VertexKey::Disc(a, p), VertexKey::Disc(b, q)) => a.cmp(b).then_with(|| {
                for k in 0..2 {
                    if (p[k] - q[k]).abs() > DEDUP_EPS {
                        return p[k].total_cmp(&q[k]);
                    }
                }
                Ordering::Equal
            }),
            (VertexKey::Lattice(..), VertexKey::Disc(..)) => Ordering::Less,
            (VertexKey::Disc(..), VertexKey::Lattice(..)) => Ordering::Greater,
        }
    }
}

/// Realisation of the cover of a periodic graph: names, neighbours and
/// positions of cover vertices.
#[derive(Clone, Debug)]
pub struct Cover<'a> {
    pg: &'a PeriodicGraph,
    dart_matrices: Vec<Option<MoebiusMatrix>>,
    out: Vec<Vec<usize>>,
}

impl<'a> Cover<'a> {
    pub fn new(pg: &'a PeriodicGraph) -> Result<Self> {
        let report = pg.validate();
        if !report.is_pass() {
            return Err(Error::argument(format!("invalid periodic graph: {report}")));
        }
        let dart_matrices = pg.darts.iter().map(|d| pg.matrix(&d.voltage)).collect();
        let mut out = vec![Vec::new(); pg.orbit_count];
        for (i, d) in pg.darts.iter().enumerate() {
            out[d.u].push(i);
        }
        Ok(Self {
            pg,
            dart_matrices,
            out,
        })
    }

    pub fn graph(&self) -> &'a PeriodicGraph {
        self.pg
    }

    /// Orbit `orbit` at the identity element.
    pub fn base_vertex(&self, orbit: usize) -> CoverVertex {
        let element = match self.pg.group {
            VoltageGroup::Lattice { .. } => Element::Lattice([0, 0]),
            VoltageGroup::Fuchsian { .. } => {
                Element::Moebius(MoebiusMatrix::identity().with_word(Word::empty()))
            }
        };
        CoverVertex { orbit, element }
    }

    pub fn root(&self) -> CoverVertex {
        self.base_vertex(0)
    }

    /// Position: frame coordinates (lattice groups) or disc coordinates.
    pub fn position(&self, v: &CoverVertex) -> [f64; 2] {
        let p = self.pg.geometry[v.orbit];
        match &v.element {
            Element::Lattice(c) => {
                let t = self.pg.translation_f64(*c);
                [p[0] + t[0], p[1] + t[1]]
            }
            Element::Moebius(m) => m.apply_disc(p),
        }
    }

    pub fn key(&self, v: &CoverVertex) -> VertexKey {
        match &v.element {
            Element::Lattice(c) => VertexKey::Lattice(v.orbit, *c),
            Element::Moebius(_) => VertexKey::Disc(v.orbit, self.position(v)),
        }
    }

    /// Neighbours `(v, h·g)` of `(u, h)`, one per dart leaving `u`, with the
    /// dart index.
    pub fn neighbours(&self, v: &CoverVertex) -> Vec<(usize, CoverVertex)> {
        self.out[v.orbit]
            .iter()
            .map(|&i| (i, self.step(v, i)))
            .collect()
    }

    pub fn step(&self, v: &CoverVertex, dart: usize) -> CoverVertex {
        let d = &self.pg.darts[dart];
        let element = match (&v.element, &d.voltage) {
            (Element::Lattice(h), Voltage::Lattice(g)) => Element::Lattice([h[0] + g[0], h[1] + g[1]]),
            (Element::Moebius(h), Voltage::Word(_)) => {
                Element::Moebius(h.mul(self.dart_matrices[dart].as_ref().unwrap()))
            }
            _ => unreachable!("validated voltage kinds"),
        };
        CoverVertex {
            orbit: d.v,
            element,
        }
    }

    /// Left action `t·(u, h) = (u, t·h)`.
    pub fn translate(&self, t: &Element, v: &CoverVertex) -> CoverVertex {
        let element = match (t, &v.element) {
            (Element::Lattice(a), Element::Lattice(b)) => Element::Lattice([a[0] + b[0], a[1] + b[1]]),
            (Element::Moebius(a), Element::Moebius(b)) => Element::Moebius(a.mul(b)),
            _ => panic!("mixed element kinds"),
        };
        CoverVertex {
            orbit: v.orbit,
            element,
        }
    }

    /// Element of the voltage group named by a voltage.
    pub fn element_of(&self, v: &Voltage) -> Element {
        match v {
            Voltage::Lattice(c) => Element::Lattice(*c),
            Voltage::Word(_) => Element::Moebius(self.pg.matrix(v).unwrap()),
        }
    }
}
