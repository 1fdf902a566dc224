//! Independent checks of colourings: properness on patches, periodicity
//! under subgroup generators, and exact chromatic numbers of small graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colouring::{ColourSource, PeriodicColouring, SimpleGraph};
use crate::error::{Error, Result};
use crate::voltage::{Cover, CoverVertex, Element, PeriodicGraph, DEFAULT_PATCH_CAP};

/// Readable name of a cover vertex: orbit and lattice coordinates, or orbit
/// and the group word.
pub fn vertex_label(pg: &PeriodicGraph, v: &CoverVertex) -> String {
    match &v.element {
        Element::Lattice(c) => format!("{}@({},{})", v.orbit, c[0], c[1]),
        Element::Moebius(m) => {
            let w = m
                .word()
                .zip(pg.presentation())
                .map(|(w, p)| p.format_word(w))
                .unwrap_or_else(|| "?".into());
            format!("{}@{}", v.orbit, if w.is_empty() { "1".into() } else { w })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub radius: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Monochromatic edges as vertex labels.
    pub monochromatic: Vec<(String, String)>,
    pub pass: bool,
}

/// Colours every vertex of the radius-`r` patch around the root and lists
/// the monochromatic edges.
pub fn check_proper(c: &dyn ColourSource, pg: &PeriodicGraph, r: usize) -> Result<ProperReport> {
    if r == 0 {
        return Err(Error::argument("radius must be at least 1"));
    }
    let cover = Cover::new(pg)?;
    let patch = cover.patch(&cover.root(), r, DEFAULT_PATCH_CAP)?;
    let colours: Vec<u32> = patch.vertices.iter().map(|v| c.colour_of(v)).collect();
    let monochromatic: Vec<(String, String)> = patch
        .edges
        .iter()
        .filter(|&&(a, b)| colours[a] == colours[b])
        .map(|&(a, b)| (vertex_label(pg, &patch.vertices[a]), vertex_label(pg, &patch.vertices[b])))
        .collect();
    Ok(ProperReport {
        radius: r,
        vertices: patch.len(),
        edges: patch.edges.len(),
        pass: monochromatic.is_empty(),
        monochromatic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub sample: usize,
    pub seed: u64,
    pub generators: usize,
    pub checks: usize,
    /// `(generator index, vertex, colour before, colour after)`.
    pub failures: Vec<(usize, String, u32, u32)>,
    /// Distinct `(quotient class, colour)` pairs met by the sample.
    pub classes_seen: usize,
    pub quotient_size: usize,
    pub pass: bool,
}

/// Length of the random walks used to sample cover vertices.
pub const SAMPLE_WALK: usize = 12;

/// Seeded sample of cover vertices: random walks from the root.
pub fn sample_vertices(cover: &Cover, sample: usize, seed: u64) -> Vec<CoverVertex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pg = cover.graph();
    (0..sample)
        .map(|_| {
            let mut v = cover.base_vertex(rng.gen_range(0..pg.orbit_count));
            let steps = rng.gen_range(0..=SAMPLE_WALK);
            for _ in 0..steps {
                let out: Vec<usize> = pg.darts_from(v.orbit).map(|(i, _)| i).collect();
                if out.is_empty() {
                    break;
                }
                v = cover.step(&v, out[rng.gen_range(0..out.len())]);
            }
            v
        })
        .collect()
}

/// `colour(t·v) = colour(v)` for every generator `t` of the subgroup and a
/// seeded sample of cover vertices, and each quotient class carries one
/// colour.
pub fn check_periodic(pc: &PeriodicColouring, pg: &PeriodicGraph, sample: usize, seed: u64) -> Result<PeriodicReport> {
    check_periodic_with(pc, pc, pg, sample, seed)
}

/// As [`check_periodic`], reading colours from `source` and classes from
/// `pc`.
pub fn check_periodic_with(
    source: &dyn ColourSource,
    pc: &PeriodicColouring,
    pg: &PeriodicGraph,
    sample: usize,
    seed: u64,
) -> Result<PeriodicReport> {
    if sample == 0 {
        return Err(Error::argument("sample must be at least 1"));
    }
    pc.subgroup.check_against(pg)?;
    let cover = Cover::new(pg)?;
    let gens: Vec<Element> = pc.subgroup.generators().iter().map(|g| cover.element_of(g)).collect();
    let vertices = sample_vertices(&cover, sample, seed);
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut classes = BTreeSet::new();
    for v in &vertices {
        let c = source.colour_of(v);
        classes.insert((pc.class_of(v), c));
        for (gi, t) in gens.iter().enumerate() {
            let tv = cover.translate(t, v);
            let ct = source.colour_of(&tv);
            classes.insert((pc.class_of(&tv), ct));
            checks += 1;
            if c != ct {
                failures.push((gi, vertex_label(pg, v), c, ct));
            }
        }
    }
    let distinct_classes: BTreeSet<usize> = classes.iter().map(|p| p.0).collect();
    let consistent = distinct_classes.len() == classes.len() && classes.len() <= pc.quotient.vertex_count();
    Ok(PeriodicReport {
        sample,
        seed,
        generators: gens.len(),
        checks,
        pass: failures.is_empty() && consistent,
        failures,
        classes_seen: classes.len(),
        quotient_size: pc.quotient.vertex_count(),
    })
}

pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Exact chromatic number by dynamic programming over vertex subsets.
pub fn brute_force_chromatic(g: &SimpleGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::argument(format!(
            "brute-force chromatic number is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let full = (1usize << n) - 1;
    let nbr: Vec<usize> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0, |m, &w| m | (1 << w)))
        .collect();
    let mut independent = vec![false; full + 1];
    independent[0] = true;
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && nbr[v] & rest == 0;
    }
    let mut best = vec![u8::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        // the class containing the lowest vertex of s
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let class = sub | low;
            if independent[class] {
                let b = best[s ^ class];
                if b != u8::MAX {
                    best[s] = best[s].min(b + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(best[full] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{colour_quotient, lift_colouring, quotient_mod_subgroup, Strategy};
    use crate::io::corpus;
    use crate::voltage::SubgroupDescriptor;

    struct Constant;
    impl ColourSource for Constant {
        fn colour_of(&self, _: &CoverVertex) -> u32 {
            0
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
    fn proper_checks() {
        let pg = corpus::square();
        assert!(check_proper(&checkerboard(), &pg, 10).unwrap().pass);
        let rep = check_proper(&Constant, &pg, 2).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.monochromatic.len(), rep.edges);
    }

    #[test]
    fn periodic_checks() {
        let pg = corpus::square();
        let pc = checkerboard();
        assert!(check_periodic(&pc, &pg, 50, 7).unwrap().pass);

        // colours by x-coordinate parity of 3: not invariant under (2, 0)
        struct Stub;
        impl ColourSource for Stub {
            fn colour_of(&self, v: &CoverVertex) -> u32 {
                match v.element {
                    Element::Lattice(c) => (c[0].rem_euclid(3) == 0) as u32,
                    Element::Moebius(_) => 0,
                }
            }
        }
        assert!(!check_periodic_with(&Stub, &pc, &pg, 100, 7).unwrap().pass);
    }

    #[test]
    fn chromatic_oracle() {
        assert_eq!(brute_force_chromatic(&SimpleGraph::complete(4)).unwrap(), 4);
        assert_eq!(brute_force_chromatic(&SimpleGraph::cycle(5)).unwrap(), 3);
        assert_eq!(brute_force_chromatic(&checkerboard().quotient.graph).unwrap(), 2);
        assert!(brute_force_chromatic(&SimpleGraph::complete(15)).is_err());
    }
}
