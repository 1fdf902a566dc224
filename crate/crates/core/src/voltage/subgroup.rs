use serde::Serialize;

use super::{Element, PeriodicGraph, Voltage};
use crate::error::{Error, Result};
use crate::euclid::{hermite_rows, IntMatrix};
use crate::hyp::{CosetTable, Word};

/// A finite-index subgroup `T` of the voltage group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupDescriptor {
    /// Rows generate `T` inside the voltage lattice (coordinates in the
    /// voltage lattice basis).
    Sublattice(IntMatrix),
    Cosets(CosetTable),
}

impl SubgroupDescriptor {
    pub fn sublattice(rows: IntMatrix) -> Result<Self> {
        if hermite_rows(&rows).is_none() {
            return Err(Error::argument("sublattice rows are linearly dependent"));
        }
        Ok(SubgroupDescriptor::Sublattice(rows))
    }

    pub fn diagonal(a: i64, b: i64) -> Result<Self> {
        Self::sublattice([[a, 0], [0, b]])
    }

    fn hermite(&self) -> Option<IntMatrix> {
        match self {
            SubgroupDescriptor::Sublattice(m) => hermite_rows(m),
            SubgroupDescriptor::Cosets(_) => None,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            SubgroupDescriptor::Sublattice(_) => {
                let h = self.hermite().expect("nonsingular");
                (h[0][0] * h[1][1]) as usize
            }
            SubgroupDescriptor::Cosets(t) => t.degree(),
        }
    }

    /// Canonical representative of `v + T`: `x ∈ [0, a)`, `y ∈ [0, d)` for
    /// the Hermite form `[[a, b], [0, d]]`.
    pub fn lattice_residue(&self, v: [i64; 2]) -> [i64; 2] {
        let h = self.hermite().expect("lattice subgroup");
        let [[a, b], [_, d]] = h;
        let j = v[0].div_euclid(a);
        let (x, y) = (v[0] - j * a, v[1] - j * b);
        [x, y.rem_euclid(d)]
    }

    /// All canonical residues, in lexicographic order.
    pub fn lattice_residues(&self) -> Vec<[i64; 2]> {
        let [[a, _], [_, d]] = self.hermite().expect("lattice subgroup");
        (0..a).flat_map(|x| (0..d).map(move |y| [x, y])).collect()
    }

    /// Right coset `T·h` of a word.
    pub fn coset_of(&self, w: &Word) -> usize {
        match self {
            SubgroupDescriptor::Cosets(t) => t.act(0, w),
            SubgroupDescriptor::Sublattice(_) => panic!("coset table subgroup expected"),
        }
    }

    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            SubgroupDescriptor::Cosets(t) => Some(t),
            SubgroupDescriptor::Sublattice(_) => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (SubgroupDescriptor::Sublattice(_), Element::Lattice(v)) => {
                self.lattice_residue(*v) == [0, 0]
            }
            (SubgroupDescriptor::Cosets(t), Element::Moebius(m)) => {
                m.word().map_or(false, |w| t.contains(w))
            }
            _ => false,
        }
    }

    /// Generators of `T` as voltages: sublattice rows, or Schreier
    /// generators of the coset table.
    pub fn generators(&self) -> Vec<Voltage> {
        match self {
            SubgroupDescriptor::Sublattice(m) => m.iter().map(|r| Voltage::Lattice(*r)).collect(),
            SubgroupDescriptor::Cosets(t) => {
                t.schreier_generators().into_iter().map(Voltage::Word).collect()
            }
        }
    }

    /// The descriptor matches the group of the graph.
    pub fn check_against(&self, pg: &PeriodicGraph) -> Result<()> {
        match (self, &pg.group) {
            (SubgroupDescriptor::Sublattice(_), super::VoltageGroup::Lattice { rank: 2, .. }) => Ok(()),
            (SubgroupDescriptor::Sublattice(_), super::VoltageGroup::Lattice { .. }) => Err(
                Error::Unsupported("finite-index subgroups need a rank-2 lattice".into()),
            ),
            (SubgroupDescriptor::Cosets(t), super::VoltageGroup::Fuchsian { presentation, .. }) => {
                if t.generator_count() != presentation.generator_count()
                    || !t.satisfies(presentation.relators())
                {
                    return Err(Error::argument("coset table does not fit the presentation"));
                }
                Ok(())
            }
            _ => Err(Error::argument("subgroup descriptor does not match the group kind")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let t = SubgroupDescriptor::sublattice([[2, 1], [0, 3]]).unwrap();
        assert_eq!(t.index(), 6);
        assert_eq!(t.lattice_residue([2, 1]), [0, 0]);
        assert_eq!(t.lattice_residue([-1, 5]), [1, 0]);
        assert!(SubgroupDescriptor::sublattice([[1, 2], [2, 4]]).is_err());
        let d = SubgroupDescriptor::diagonal(4, 4).unwrap();
        assert_eq!(d.index(), 16);
        assert!(d.contains(&Element::Lattice([4, -8])));
        assert!(!d.contains(&Element::Lattice([2, 0])));
    }
}
