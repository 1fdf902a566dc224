use std::collections::{BTreeSet, VecDeque};

use super::{Cover, Element, PeriodicGraph, SubgroupDescriptor, VertexKey, Voltage, VoltageGroup};
use crate::error::{Error, Result};
use crate::hyp::hyperbolic_distance;

/// Longest edge: Euclidean length in the lattice metric, or hyperbolic
/// distance between placed endpoints.
pub fn max_edge_length(pg: &PeriodicGraph) -> Result<f64> {
    if pg.geometry.len() != pg.orbit_count {
        return Err(Error::argument("periodic graph has no geometry"));
    }
    let mut best: f64 = 0.0;
    for d in &pg.darts {
        let len = match (&pg.group, &d.voltage) {
            (VoltageGroup::Lattice { lattice, .. }, Voltage::Lattice(c)) => {
                let t = pg.translation_f64(*c);
                let p = pg.geometry[d.u];
                let q = pg.geometry[d.v];
                lattice
                    .metric()
                    .length_f64([q[0] + t[0] - p[0], q[1] + t[1] - p[1]])
            }
            (VoltageGroup::Fuchsian { .. }, Voltage::Word(_)) => {
                let m = pg.matrix(&d.voltage).unwrap();
                hyperbolic_distance(pg.geometry[d.u], m.apply_disc(pg.geometry[d.v]))?
            }
            _ => return Err(Error::argument("voltage kind does not match the group")),
        };
        best = best.max(len);
    }
    Ok(best)
}

pub const NONCONTRACTIBLE_CAP: usize = 2_000_000;

/// Length of the shortest closed walk in the quotient by `T` whose voltage
/// is a non-identity element of `T`: the minimum over orbits `u` of the
/// distance from `(u, 1)` to its nearest distinct `T`-translate, found by
/// breadth-first search in the cover (exact, so no enumeration bound on
/// `T` is needed).
pub fn shortest_noncontractible(pg: &PeriodicGraph, t: &SubgroupDescriptor) -> Result<usize> {
    shortest_noncontractible_capped(pg, t, NONCONTRACTIBLE_CAP)
}

pub fn shortest_noncontractible_capped(
    pg: &PeriodicGraph,
    t: &SubgroupDescriptor,
    cap: usize,
) -> Result<usize> {
    t.check_against(pg)?;
    let cover = Cover::new(pg)?;
    let mut best: Option<usize> = None;
    for u in 0..pg.orbit_count {
        let start = cover.base_vertex(u);
        let start_key = cover.key(&start);
        // cosets of T meeting the stabiliser of the base vertex
        let stab_cosets: BTreeSet<usize> = match (t, pg.stabiliser(u)) {
            (SubgroupDescriptor::Cosets(table), Some((w, m))) => {
                (0..*m).map(|k| table.act(0, &w.pow(k as usize))).collect()
            }
            (SubgroupDescriptor::Cosets(_), None) => [0].into_iter().collect(),
            _ => BTreeSet::new(),
        };
        let is_translate = |v: &super::CoverVertex| -> bool {
            if v.orbit != u {
                return false;
            }
            match &v.element {
                Element::Lattice(c) => *c != [0, 0] && t.contains(&v.element),
                Element::Moebius(m) => {
                    let w = m.word().expect("cover elements carry words");
                    stab_cosets.contains(&t.coset_of(w)) && cover.key(v) != start_key
                }
            }
        };
        let mut seen: BTreeSet<VertexKey> = BTreeSet::new();
        seen.insert(start_key);
        let mut queue = VecDeque::from([(start, 0usize)]);
        let mut found = None;
        'bfs: while let Some((v, d)) = queue.pop_front() {
            if best.map_or(false, |b| d >= b) {
                break;
            }
            for (_, w) in cover.neighbours(&v) {
                if is_translate(&w) {
                    found = Some(d + 1);
                    break 'bfs;
                }
                let k = cover.key(&w);
                if seen.insert(k) {
                    if seen.len() > cap {
                        return Err(Error::resource(format!(
                            "search exceeded {cap} cover vertices; best bound so far {}",
                            best.map_or("none".to_string(), |b| b.to_string())
                        )));
                    }
                    queue.push_back((w, d + 1));
                }
            }
        }
        if let Some(f) = found {
            best = Some(best.map_or(f, |b| b.min(f)));
        }
    }
    best.ok_or_else(|| Error::Internal("no non-contractible closed walk found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::corpus;

    #[test]
    fn edge_lengths() {
        assert!((max_edge_length(&corpus::square()).unwrap() - 1.0).abs() < 1e-12);
        let k = max_edge_length(&corpus::kings_square()).unwrap();
        assert!((k - 2f64.sqrt()).abs() < 1e-12);
        assert!((max_edge_length(&corpus::hexagonal()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heptagonal_edge_length_matches_distance_oracle() {
        use std::f64::consts::PI;
        let pg = corpus::heptagonal_triangulation();
        let len = max_edge_length(&pg).unwrap();
        // oracle: twice the leg of the (2,3,7) triangle at the right angle,
        // cosh = cos(π/3) / sin(π/7)
        let oracle = 2.0 * ((PI / 3.0).cos() / (PI / 7.0).sin()).acosh();
        assert!((len - oracle).abs() < 1e-9, "{len} vs {oracle}");
    }

    #[test]
    fn square_and_hexagonal_examples() {
        let sq = corpus::square();
        let t = |a, b| SubgroupDescriptor::diagonal(a, b).unwrap();
        assert_eq!(shortest_noncontractible(&sq, &t(4, 4)).unwrap(), 4);
        assert_eq!(shortest_noncontractible(&sq, &t(3, 6)).unwrap(), 3);
        assert_eq!(shortest_noncontractible(&corpus::hexagonal(), &t(2, 2)).unwrap(), 4);
    }
}
