//! Bundled example graphs.

use crate::error::{Error, Result};
use crate::euclid::{int, Lattice, Metric};
use crate::hyp::{triangle_group, Word};
use crate::voltage::{Dart, PeriodicGraph, Voltage, VoltageGroup};

/// Names accepted by [`by_name`], with a one-line description.
pub const EXAMPLES: &[(&str, &str)] = &[
    ("square", "square lattice Z², one orbit, degree 4"),
    ("hexagonal", "honeycomb, two orbits, degree 3"),
    ("triangular", "triangular lattice, one orbit, degree 6"),
    ("kings", "square lattice with both diagonals, degree 8"),
    ("leafed-square", "square lattice with a pendant leaf at every vertex"),
    ("subdivided-square", "square lattice with every edge subdivided"),
    ("leafed-subdivided-square", "subdivided square lattice with pendant leaves"),
    ("two-leaf-square", "square lattice with two pendant-leaf orbits"),
    ("star-hexagonal", "honeycomb with two leaves per A-vertex (contains K1,5)"),
    ("path", "bi-infinite path over a rank-1 lattice (two ends)"),
    ("heptagonal", "{3,7} triangulation over the (2,3,7) triangle group"),
    ("order5-square", "{4,5} tiling over the (2,4,5) triangle group"),
];

pub fn by_name(name: &str) -> Result<PeriodicGraph> {
    let pg = match name {
        "square" => square(),
        "hexagonal" => hexagonal(),
        "triangular" => triangular(),
        "kings" => kings_square(),
        "leafed-square" => leafed_square(),
        "subdivided-square" => subdivided_square(),
        "leafed-subdivided-square" => leafed_subdivided_square(),
        "two-leaf-square" => two_leaf_square(),
        "star-hexagonal" => star_hexagonal(),
        "path" => path(),
        "heptagonal" => heptagonal_triangulation(),
        "order5-square" => order5_square_tiling(),
        _ => {
            let known: Vec<&str> = EXAMPLES.iter().map(|e| e.0).collect();
            return Err(Error::argument(format!(
                "unknown example {name:?}; known: {}",
                known.join(", ")
            )));
        }
    };
    Ok(pg)
}

fn unit_lattice() -> VoltageGroup {
    VoltageGroup::Lattice {
        lattice: Lattice::new([int(1), int(0)], [int(0), int(1)]).unwrap(),
        rank: 2,
        symmetry: Vec::new(),
    }
}

fn hex_lattice(scale: i128) -> VoltageGroup {
    VoltageGroup::Lattice {
        lattice: Lattice::with_metric(
            [int(1), int(0)],
            [int(0), int(1)],
            Metric::hexagonal(int(scale)),
        )
        .unwrap(),
        rank: 2,
        symmetry: Vec::new(),
    }
}

/// Dart and its reverse.
fn edge(darts: &mut Vec<Dart>, u: usize, v: usize, a: i64, b: i64) {
    darts.push(Dart::lattice(u, v, a, b));
    darts.push(Dart::lattice(v, u, -a, -b));
}

fn lattice_graph(name: &str, orbits: usize, geometry: Vec<[f64; 2]>, darts: Vec<Dart>, group: VoltageGroup) -> PeriodicGraph {
    let mut darts = darts;
    darts.sort();
    PeriodicGraph {
        orbit_count: orbits,
        darts,
        geometry,
        group,
        name: Some(name.to_string()),
    }
}

pub fn square() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    edge(&mut d, 0, 0, 0, 1);
    lattice_graph("square", 1, vec![[0.0, 0.0]], d, unit_lattice())
}

pub fn kings_square() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    edge(&mut d, 0, 0, 0, 1);
    edge(&mut d, 0, 0, 1, 1);
    edge(&mut d, 0, 0, 1, -1);
    lattice_graph("kings", 1, vec![[0.0, 0.0]], d, unit_lattice())
}

pub fn hexagonal() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 1, 0, 0);
    edge(&mut d, 0, 1, -1, 0);
    edge(&mut d, 0, 1, 0, 1);
    let third = 1.0 / 3.0;
    lattice_graph(
        "hexagonal",
        2,
        vec![[third, 2.0 * third], [2.0 * third, third]],
        d,
        hex_lattice(3),
    )
}

pub fn triangular() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    edge(&mut d, 0, 0, 0, 1);
    edge(&mut d, 0, 0, 1, 1);
    lattice_graph("triangular", 1, vec![[0.0, 0.0]], d, hex_lattice(1))
}

pub fn leafed_square() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    edge(&mut d, 0, 0, 0, 1);
    edge(&mut d, 0, 1, 0, 0);
    lattice_graph("leafed-square", 2, vec![[0.0, 0.0], [0.3, 0.2]], d, unit_lattice())
}

pub fn subdivided_square() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 1, 0, 0);
    edge(&mut d, 1, 0, 1, 0);
    edge(&mut d, 0, 2, 0, 0);
    edge(&mut d, 2, 0, 0, 1);
    lattice_graph(
        "subdivided-square",
        3,
        vec![[0.0, 0.0], [0.5, 0.0], [0.0, 0.5]],
        d,
        unit_lattice(),
    )
}

pub fn leafed_subdivided_square() -> PeriodicGraph {
    let mut pg = subdivided_square();
    edge(&mut pg.darts, 0, 3, 0, 0);
    pg.darts.sort();
    pg.orbit_count = 4;
    pg.geometry.push([0.3, 0.2]);
    pg.name = Some("leafed-subdivided-square".into());
    pg
}

pub fn two_leaf_square() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    edge(&mut d, 0, 0, 0, 1);
    edge(&mut d, 0, 1, 0, 0);
    edge(&mut d, 0, 2, 0, 0);
    lattice_graph(
        "two-leaf-square",
        3,
        vec![[0.0, 0.0], [0.3, 0.2], [-0.2, 0.3]],
        d,
        unit_lattice(),
    )
}

pub fn star_hexagonal() -> PeriodicGraph {
    let mut pg = hexagonal();
    edge(&mut pg.darts, 0, 2, 0, 0);
    edge(&mut pg.darts, 0, 3, 0, 0);
    pg.darts.sort();
    pg.orbit_count = 4;
    let a = pg.geometry[0];
    pg.geometry.push([a[0] - 0.1, a[1] + 0.1]);
    pg.geometry.push([a[0] - 0.15, a[1]]);
    pg.name = Some("star-hexagonal".into());
    pg
}

pub fn path() -> PeriodicGraph {
    let mut d = Vec::new();
    edge(&mut d, 0, 0, 1, 0);
    let group = VoltageGroup::Lattice {
        lattice: Lattice::new([int(1), int(0)], [int(0), int(1)]).unwrap(),
        rank: 1,
        symmetry: Vec::new(),
    };
    lattice_graph("path", 1, vec![[0.0, 0.0]], d, group)
}

/// `{q, r}` tiling whose vertices are the orbit of the fixed point of `z`
/// in the `(2, q, r)` triangle group: darts `z^j·x`, stabiliser `z`.
fn triangle_tiling(name: &str, q: u32, r: u32) -> PeriodicGraph {
    let pres = triangle_group(2, q, r).expect("hyperbolic triple");
    let darts = (0..r as i64)
        .map(|j| Dart::new(0, 0, Voltage::Word(Word::power(2, j).concat(&Word::generator(0)))))
        .collect();
    PeriodicGraph {
        orbit_count: 1,
        darts,
        geometry: vec![[0.0, 0.0]],
        group: VoltageGroup::Fuchsian {
            presentation: pres,
            stabilisers: vec![Some((Word::generator(2), r))],
        },
        name: Some(name.to_string()),
    }
}

pub fn heptagonal_triangulation() -> PeriodicGraph {
    triangle_tiling("heptagonal", 3, 7)
}

pub fn order5_square_tiling() -> PeriodicGraph {
    triangle_tiling("order5-square", 4, 5)
}

/// Quarter-turn-and-translation generators of `p4` in Cartesian
/// coordinates; used to demonstrate lattice extraction.
pub fn p4_generators() -> Vec<crate::euclid::EuclideanIsometry> {
    use crate::euclid::EuclideanIsometry;
    vec![
        EuclideanIsometry::quarter_turn(),
        EuclideanIsometry::translation_by([int(1), int(0)]),
    ]
}
