use std::fmt;

use serde::Serialize;

use crate::euclid::{to_f64, EuclideanIsometry, Lattice};
use crate::hyp::{FuchsianPresentation, MoebiusMatrix, Word, DEDUP_EPS};

/// Edge label: a lattice vector in coordinates of the voltage lattice
/// basis, or a word in the Fuchsian generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Voltage {
    Lattice([i64; 2]),
    Word(Word),
}

impl Voltage {
    pub fn inverse(&self) -> Voltage {
        match self {
            Voltage::Lattice([a, b]) => Voltage::Lattice([-a, -b]),
            Voltage::Word(w) => Voltage::Word(w.inverse()),
        }
    }

    /// `self · other` (right action: walk `self`, then `other`).
    pub fn compose(&self, other: &Voltage) -> Voltage {
        match (self, other) {
            (Voltage::Lattice([a, b]), Voltage::Lattice([c, d])) => Voltage::Lattice([a + c, b + d]),
            (Voltage::Word(u), Voltage::Word(v)) => Voltage::Word(u.concat(v)),
            _ => panic!("mixed voltage kinds"),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Voltage::Lattice(v) => *v == [0, 0],
            Voltage::Word(w) => w.is_empty(),
        }
    }

    pub fn as_lattice(&self) -> Option<[i64; 2]> {
        match self {
            Voltage::Lattice(v) => Some(*v),
            Voltage::Word(_) => None,
        }
    }
}

/// Directed edge `(u, v, g)`: cover vertex `(u, h)` is adjacent to
/// `(v, h·g)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub u: usize,
    pub v: usize,
    pub voltage: Voltage,
}

impl Dart {
    pub fn new(u: usize, v: usize, voltage: Voltage) -> Self {
        Self { u, v, voltage }
    }

    pub fn lattice(u: usize, v: usize, a: i64, b: i64) -> Self {
        Self::new(u, v, Voltage::Lattice([a, b]))
    }

    pub fn reverse(&self) -> Dart {
        Dart::new(self.v, self.u, self.voltage.inverse())
    }
}

/// The group acting on the cover.
#[derive(Clone, Debug)]
pub enum VoltageGroup {
    /// Translation lattice of rank 1 or 2. `symmetry` optionally keeps the
    /// wallpaper-group generators the lattice was derived from.
    Lattice {
        lattice: Lattice,
        rank: u8,
        symmetry: Vec<EuclideanIsometry>,
    },
    /// Fuchsian group. Vertex orbit `u` may have a finite cyclic stabiliser
    /// generated by a word of the given order fixing its base point; cover
    /// vertices of that orbit are then the cosets `h·S_u`.
    Fuchsian {
        presentation: FuchsianPresentation,
        stabilisers: Vec<Option<(Word, u32)>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    EuclideanLattice,
    Fuchsian,
}

/// Finite quotient of an infinite periodic graph: vertex orbits, darts
/// labelled by voltages, and one base point per orbit.
#[derive(Clone, Debug)]
pub struct PeriodicGraph {
    pub orbit_count: usize,
    pub darts: Vec<Dart>,
    /// Lattice groups: frame coordinates. Fuchsian groups: Poincaré-disc
    /// coordinates.
    pub geometry: Vec<[f64; 2]>,
    pub group: VoltageGroup,
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    OrbitOutOfRange,
    VoltageKind,
    LoopInCover,
    DuplicateDart,
    MissingReverseDart,
    RepeatedReverseDart,
    StabiliserNotClosed,
    Geometry,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub dart: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, dart: Option<usize>, message: String) {
        self.violations.push(Violation {
            kind,
            dart,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        write!(f, "fail")?;
        for v in &self.violations {
            write!(f, "\n  {}", v.message)?;
        }
        Ok(())
    }
}

impl PeriodicGraph {
    pub fn kind(&self) -> GroupKind {
        match self.group {
            VoltageGroup::Lattice { .. } => GroupKind::EuclideanLattice,
            VoltageGroup::Fuchsian { .. } => GroupKind::Fuchsian,
        }
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.group {
            VoltageGroup::Lattice { lattice, .. } => Some(lattice),
            VoltageGroup::Fuchsian { .. } => None,
        }
    }

    pub fn presentation(&self) -> Option<&FuchsianPresentation> {
        match &self.group {
            VoltageGroup::Fuchsian { presentation, .. } => Some(presentation),
            VoltageGroup::Lattice { .. } => None,
        }
    }

    pub fn stabiliser(&self, orbit: usize) -> Option<&(Word, u32)> {
        match &self.group {
            VoltageGroup::Fuchsian { stabilisers, .. } => {
                stabilisers.get(orbit).and_then(Option::as_ref)
            }
            VoltageGroup::Lattice { .. } => None,
        }
    }

    pub fn darts_from(&self, u: usize) -> impl Iterator<Item = (usize, &Dart)> + '_ {
        self.darts.iter().enumerate().filter(move |(_, d)| d.u == u)
    }

    /// Number of darts leaving each orbit (the cover degree).
    pub fn orbit_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.orbit_count];
        for d in &self.darts {
            if d.u < self.orbit_count {
                deg[d.u] += 1;
            }
        }
        deg
    }

    /// Matrix of a Fuchsian voltage.
    pub(crate) fn matrix(&self, v: &Voltage) -> Option<MoebiusMatrix> {
        match (v, self.presentation()) {
            (Voltage::Word(w), Some(p)) => Some(p.evaluate(w)),
            _ => None,
        }
    }

    /// Lattice voltage as a frame vector.
    pub(crate) fn translation_f64(&self, v: [i64; 2]) -> [f64; 2] {
        let l = self.lattice().expect("lattice group");
        let t = l.combine(v);
        [to_f64(&t[0]), to_f64(&t[1])]
    }

    /// Check the structural invariants; report-valued.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        if self.geometry.len() != self.orbit_count {
            rep.push(
                ViolationKind::Geometry,
                None,
                format!(
                    "{} base points for {} orbits",
                    self.geometry.len(),
                    self.orbit_count
                ),
            );
        }
        for (i, d) in self.darts.iter().enumerate() {
            if d.u >= self.orbit_count || d.v >= self.orbit_count {
                rep.push(
                    ViolationKind::OrbitOutOfRange,
                    Some(i),
                    format!("dart {i} joins orbit {} to {} but there are {} orbits", d.u, d.v, self.orbit_count),
                );
            }
            let ok = match (&self.group, &d.voltage) {
                (VoltageGroup::Lattice { rank, .. }, Voltage::Lattice(v)) => *rank == 2 || v[1] == 0,
                (VoltageGroup::Fuchsian { .. }, Voltage::Word(_)) => true,
                _ => false,
            };
            if !ok {
                rep.push(
                    ViolationKind::VoltageKind,
                    Some(i),
                    format!("dart {i} has a voltage of the wrong kind for the group"),
                );
            }
        }
        if !rep.is_pass() {
            return rep;
        }
        match &self.group {
            VoltageGroup::Lattice { .. } => self.validate_lattice(&mut rep),
            VoltageGroup::Fuchsian { .. } => self.validate_fuchsian(&mut rep),
        }
        rep
    }

    fn validate_lattice(&self, rep: &mut ValidationReport) {
        let mut sorted: Vec<(&Dart, usize)> = self.darts.iter().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                rep.push(
                    ViolationKind::DuplicateDart,
                    Some(w[1].1),
                    format!("dart {} duplicates dart {}", w[1].1, w[0].1),
                );
            }
        }
        for (i, d) in self.darts.iter().enumerate() {
            if d.u == d.v && d.voltage.is_identity() {
                rep.push(
                    ViolationKind::LoopInCover,
                    Some(i),
                    format!("dart {i} ({}, {}, identity) is a loop in cover", d.u, d.v),
                );
                continue;
            }
            let r = d.reverse();
            let count = self.darts.iter().filter(|&e| *e == r).count();
            if count == 0 {
                rep.push(
                    ViolationKind::MissingReverseDart,
                    Some(i),
                    format!("dart {i} missing reverse dart ({}, {}, {:?})", r.u, r.v, r.voltage),
                );
            } else if count > 1 {
                rep.push(
                    ViolationKind::RepeatedReverseDart,
                    Some(i),
                    format!("dart {i} has its reverse {count} times"),
                );
            }
        }
    }

    /// Geometric checks: neighbour points of each base point are distinct,
    /// differ from it, are permuted by the stabiliser, and each dart's
    /// endpoint sees the base point among its own neighbours.
    fn validate_fuchsian(&self, rep: &mut ValidationReport) {
        let pres = self.presentation().unwrap();
        let near = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]) < DEDUP_EPS;
        let nbr: Vec<(usize, usize, [f64; 2])> = self
            .darts
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let m = self.matrix(&d.voltage).unwrap();
                (i, d.v, m.apply_disc(self.geometry[d.v]))
            })
            .collect();
        for (k, (i, v, p)) in nbr.iter().enumerate() {
            let u = self.darts[*i].u;
            if *v == u && near(*p, self.geometry[u]) {
                rep.push(
                    ViolationKind::LoopInCover,
                    Some(*i),
                    format!("dart {i} is a loop in cover"),
                );
            }
            for (j, v2, p2) in &nbr[..k] {
                if self.darts[*j].u == u && v2 == v && near(*p, *p2) {
                    rep.push(
                        ViolationKind::DuplicateDart,
                        Some(*i),
                        format!("dart {i} reaches the same neighbour as dart {j}"),
                    );
                }
            }
        }
        for (i, d) in self.darts.iter().enumerate() {
            let m = self.matrix(&d.voltage).unwrap();
            let back = m.inverse().apply_disc(self.geometry[d.u]);
            let found = nbr.iter().filter(|(j, v2, p2)| {
                self.darts[*j].u == d.v && *v2 == d.u && near(*p2, back)
            });
            match found.count() {
                0 => rep.push(
                    ViolationKind::MissingReverseDart,
                    Some(i),
                    format!("dart {i} missing reverse dart"),
                ),
                1 => {}
                n => rep.push(
                    ViolationKind::RepeatedReverseDart,
                    Some(i),
                    format!("dart {i} has its reverse {n} times"),
                ),
            }
        }
        for u in 0..self.orbit_count {
            let Some((w, order)) = self.stabiliser(u) else {
                continue;
            };
            let s = pres.evaluate(w);
            if !near(s.apply_disc(self.geometry[u]), self.geometry[u])
                || !s.pow(*order as i64).is_identity()
            {
                rep.push(
                    ViolationKind::StabiliserNotClosed,
                    None,
                    format!("stabiliser of orbit {u} does not fix its base point with order {order}"),
                );
                continue;
            }
            for (i, v, p) in nbr.iter().filter(|(i, _, _)| self.darts[*i].u == u) {
                let q = s.apply_disc(*p);
                let hit = nbr
                    .iter()
                    .any(|(j, v2, p2)| self.darts[*j].u == u && v2 == v && near(*p2, q));
                if !hit {
                    rep.push(
                        ViolationKind::StabiliserNotClosed,
                        Some(*i),
                        format!("rotating dart {i} by the stabiliser of orbit {u} leaves the dart set"),
                    );
                }
            }
        }
    }
}
