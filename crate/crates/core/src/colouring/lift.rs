use serde::Serialize;

use super::{QuotientColouring, QuotientGraph, QuotientVertex};
use crate::error::{Error, Result};
use crate::voltage::{CoverVertex, SubgroupDescriptor};

/// Anything that assigns a colour to every cover vertex.
pub trait ColourSource {
    fn colour_of(&self, v: &CoverVertex) -> u32;
}

/// A `T`-invariant colouring of the cover, stored as a colouring of the
/// quotient by `T` plus the map from cover vertices to quotient vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicColouring {
    pub subgroup: SubgroupDescriptor,
    #[serde(skip)]
    pub quotient: QuotientGraph,
    pub vertices: Vec<QuotientVertex>,
    pub colours: Vec<u32>,
    pub palette: usize,
}

impl PeriodicColouring {
    pub fn quotient_colouring(&self) -> QuotientColouring {
        QuotientColouring {
            colours: self.colours.clone(),
            palette: self.palette,
        }
    }

    /// Monochromatic quotient edges.
    pub fn quotient_conflicts(&self) -> Vec<(usize, usize)> {
        self.quotient.graph.conflicts(&self.colours)
    }

    pub fn class_of(&self, v: &CoverVertex) -> usize {
        self.quotient.resolve(&self.subgroup, v)
    }
}

impl ColourSource for PeriodicColouring {
    fn colour_of(&self, v: &CoverVertex) -> u32 {
        self.colours[self.class_of(v)]
    }
}

/// Attach a quotient colouring to its quotient; the lift colours a cover
/// vertex by its class.
pub fn lift_colouring(
    qc: QuotientColouring,
    quotient: QuotientGraph,
    subgroup: SubgroupDescriptor,
) -> Result<PeriodicColouring> {
    if qc.colours.len() != quotient.vertex_count() {
        return Err(Error::argument(format!(
            "colouring has {} entries, quotient has {} vertices",
            qc.colours.len(),
            quotient.vertex_count()
        )));
    }
    Ok(PeriodicColouring {
        subgroup,
        vertices: quotient.vertices.clone(),
        quotient,
        colours: qc.colours,
        palette: qc.palette,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{colour_quotient, quotient_mod_subgroup, Strategy};
    use crate::io::corpus;
    use crate::voltage::Element;

    #[test]
    fn checkerboard_alternates() {
        let pg = corpus::square();
        let t = SubgroupDescriptor::diagonal(2, 2).unwrap();
        let q = quotient_mod_subgroup(&pg, &t).unwrap();
        let qc = colour_quotient(&q.graph, Strategy::Exact { k: 2, node_budget: 1000 })
            .unwrap()
            .unwrap();
        let pc = lift_colouring(qc, q, t).unwrap();
        let v = |x: i64, y: i64| CoverVertex {
            orbit: 0,
            element: Element::Lattice([x, y]),
        };
        for x in -8..8 {
            for y in -8..8 {
                assert_ne!(pc.colour_of(&v(x, y)), pc.colour_of(&v(x + 1, y)));
                assert_ne!(pc.colour_of(&v(x, y)), pc.colour_of(&v(x, y + 1)));
            }
        }
        assert_eq!(pc.palette, 2);
    }

    #[test]
    fn unique_colouring_repeats_with_period() {
        let pg = corpus::hexagonal();
        let t = SubgroupDescriptor::diagonal(2, 3).unwrap();
        let q = quotient_mod_subgroup(&pg, &t).unwrap();
        let qc = colour_quotient(&q.graph, Strategy::Unique).unwrap().unwrap();
        assert_eq!(qc.palette, 12);
        let pc = lift_colouring(qc, q, t).unwrap();
        let v = |o, x: i64, y: i64| CoverVertex {
            orbit: o,
            element: Element::Lattice([x, y]),
        };
        for x in 0..2 {
            for y in 0..3 {
                assert_eq!(pc.colour_of(&v(1, x, y)), pc.colour_of(&v(1, x + 2, y - 6)));
                assert_ne!(pc.colour_of(&v(1, x, y)), pc.colour_of(&v(1, x + 1, y)));
            }
        }
    }
}
