use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use super::{
    classify_and_length, covering_radius, is_torsion_free, low_index_subgroups, CosetTable,
    FuchsianPresentation, IsometryClass, Letter, MoebiusMatrix, Word,
};
use crate::error::{Error, Result};

/// Limits for [`subgroup_avoiding_short`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Largest coset table considered (also bounds intersections and
    /// regular representations).
    pub max_cosets: usize,
    /// Degree bound of the low-index search seeding the candidates.
    pub low_index_degree: usize,
    /// Node budget of the low-index search.
    pub low_index_nodes: usize,
    /// Cap on group elements visited while enumerating short translations.
    pub max_elements: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_cosets: 2000,
            low_index_degree: 7,
            low_index_nodes: 2_000_000,
            max_elements: 200_000,
        }
    }
}

impl SearchBudget {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        Self {
            max_cosets,
            ..Self::default()
        }
    }
}

/// A hyperbolic element with translation length below the threshold.
#[derive(Clone, Debug, Serialize)]
pub struct ShortElement {
    pub word: String,
    pub length: f64,
    #[serde(skip)]
    pub letters: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupCertificate {
    pub threshold: f64,
    /// Origin displacement bound used for the enumeration.
    pub displacement_bound: f64,
    pub elements_visited: usize,
    /// One representative per matrix of each short translation found; the
    /// table's subgroup contains no conjugate of any of them.
    pub excluded: Vec<ShortElement>,
    pub index: usize,
    /// How the table was obtained: `low-index`, `regular`, `intersection`.
    pub origin: String,
    pub candidates_tried: usize,
}

struct Keyed(MoebiusMatrix);

impl PartialEq for Keyed {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Keyed {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.tolerant_cmp(&o.0)
    }
}

/// `d(i, g·i)` in the upper half-plane.
fn origin_displacement(m: &MoebiusMatrix) -> f64 {
    let s: f64 = m.entries().iter().map(|x| x * x).sum();
    (s / 2.0).max(1.0).acosh()
}

/// Hyperbolic elements of translation length `< threshold`, up to
/// conjugacy. Every such element has a conjugate whose axis passes within
/// the covering radius `ρ` of the base point, hence moves it at most
/// `threshold + 2ρ`; those are enumerated by breadth-first search over the
/// Cayley graph, restricted to a slightly larger displacement so that paths
/// to them stay inside the search region.
pub fn enumerate_short_translations(
    pres: &FuchsianPresentation,
    threshold: f64,
    max_elements: usize,
) -> Result<(Vec<ShortElement>, f64, usize)> {
    if !(threshold > 0.0) {
        return Err(Error::argument("length threshold must be positive"));
    }
    let rho = covering_radius(pres).unwrap_or_else(|| {
        pres.matrices()
            .iter()
            .map(origin_displacement)
            .fold(0.0, f64::max)
    });
    let step = pres
        .matrices()
        .iter()
        .map(origin_displacement)
        .fold(0.0, f64::max);
    let bound = threshold + 2.0 * rho;
    let search = bound + 2.0 * rho + step;

    let mut letters = Vec::new();
    for g in 0..pres.generator_count() {
        letters.push(Letter::new(g, false));
        letters.push(Letter::new(g, true));
    }
    let step_mats: Vec<MoebiusMatrix> = letters
        .iter()
        .map(|&l| pres.evaluate(&Word::from_letters([l])))
        .collect();

    let start = MoebiusMatrix::identity().with_word(Word::empty());
    let mut seen = BTreeSet::new();
    seen.insert(Keyed(start.clone()));
    let mut frontier = vec![start];
    let mut found: Vec<ShortElement> = Vec::new();
    let mut visited = 1usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            let (class, len) = classify_and_length(g);
            if class == IsometryClass::Hyperbolic && len < threshold {
                let w = g.word().cloned().unwrap_or_default();
                found.push(ShortElement {
                    word: pres.format_word(&w),
                    length: len,
                    letters: w,
                });
            }
            for s in &step_mats {
                let h = g.mul(s);
                if origin_displacement(&h) > search {
                    continue;
                }
                let key = Keyed(h);
                if seen.contains(&key) {
                    continue;
                }
                visited += 1;
                if visited > max_elements {
                    return Err(Error::resource(format!(
                        "short-translation enumeration exceeded {max_elements} elements \
                         (displacement bound {bound:.4})"
                    )));
                }
                next.push(key.0.clone());
                seen.insert(key);
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.letters.len().cmp(&b.letters.len()))
            .then(a.letters.cmp(&b.letters))
    });
    Ok((found, bound, visited))
}

fn fixed_point_free(table: &CosetTable, w: &Word) -> bool {
    (0..table.degree()).all(|c| table.act(c, w) != c)
}

fn accepts(pres: &FuchsianPresentation, table: &CosetTable, short: &[ShortElement]) -> bool {
    is_torsion_free(pres, table) && short.iter().all(|e| fixed_point_free(table, &e.letters))
}

/// Search for a torsion-free finite-index subgroup containing no conjugate
/// of a hyperbolic element shorter than `threshold`. Candidates, in order:
/// low-index subgroups, kernels of their permutation actions (regular
/// representations of the image groups), then pairwise intersections.
pub fn subgroup_avoiding_short(
    pres: &FuchsianPresentation,
    threshold: f64,
    budget: &SearchBudget,
) -> Result<(CosetTable, SubgroupCertificate)> {
    let (short, bound, visited) = enumerate_short_translations(pres, threshold, budget.max_elements)?;
    let mut tried = 0usize;
    let finish = |table: CosetTable, origin: &str, tried: usize| {
        let cert = SubgroupCertificate {
            threshold,
            displacement_bound: bound,
            elements_visited: visited,
            excluded: short.clone(),
            index: table.degree(),
            origin: origin.to_string(),
            candidates_tried: tried,
        };
        (table, cert)
    };

    let degree = budget.low_index_degree.min(budget.max_cosets);
    let mut pool = low_index_subgroups(pres, degree, budget.low_index_nodes)?;
    pool.sort_by_key(CosetTable::degree);
    for t in &pool {
        tried += 1;
        if accepts(pres, t, &short) {
            return Ok(finish(t.clone(), "low-index", tried));
        }
    }

    let mut regular: Vec<CosetTable> = Vec::new();
    for t in &pool {
        if t.degree() == 1 {
            continue;
        }
        if let Ok(r) = t.regular_representation(budget.max_cosets) {
            if !regular.contains(&r) && !pool.contains(&r) {
                regular.push(r);
            }
        }
    }
    regular.sort_by_key(CosetTable::degree);
    for t in &regular {
        tried += 1;
        if accepts(pres, t, &short) {
            return Ok(finish(t.clone(), "regular", tried));
        }
    }

    let all: Vec<&CosetTable> = pool.iter().chain(regular.iter()).filter(|t| t.degree() > 1).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let Ok(t) = all[i].intersect(all[j], budget.max_cosets) else {
                continue;
            };
            tried += 1;
            if accepts(pres, &t, &short) {
                return Ok(finish(t, "intersection", tried));
            }
        }
    }

    let longest = short
        .last()
        .map(|e| format!("; longest excluded element {} of length {:.6}", e.word, e.length))
        .unwrap_or_default();
    Err(Error::resource(format!(
        "no torsion-free subgroup of index ≤ {} avoids the {} short translations below {threshold} \
         ({tried} candidates tried{longest})",
        budget.max_cosets,
        short.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{riemann_hurwitz_genus, triangle_group};

    #[test]
    fn tiny_threshold_has_no_short_elements() {
        let p = triangle_group(2, 3, 7).unwrap();
        let (t, cert) = subgroup_avoiding_short(&p, 0.1, &SearchBudget::default()).unwrap();
        assert!(cert.excluded.is_empty());
        assert!(is_torsion_free(&p, &t));
        assert!(riemann_hurwitz_genus(p.signature(), t.degree() as u64).is_ok());
    }

    #[test]
    fn threshold_just_above_systole() {
        let p = triangle_group(2, 3, 7).unwrap();
        let (all, _, _) = enumerate_short_translations(&p, 3.0, 200_000).unwrap();
        let min = all.first().expect("short elements exist").length;
        let (t, cert) = subgroup_avoiding_short(&p, min + 1e-6, &SearchBudget::default()).unwrap();
        assert!(!cert.excluded.is_empty());
        for e in &cert.excluded {
            assert!((e.length - min).abs() < 1e-6);
            assert!(!t.contains(&e.letters));
            // oracle: the matrix of the word has the recorded length
            let (_, len) = classify_and_length(&p.evaluate(&e.letters));
            assert!((len - e.length).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_budget() {
        let p = triangle_group(2, 3, 7).unwrap();
        let err = subgroup_avoiding_short(&p, 1.0, &SearchBudget::with_max_cosets(1)).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn edge_length_threshold_gives_klein_quartic() {
        let p = triangle_group(2, 3, 7).unwrap();
        let (t, cert) = subgroup_avoiding_short(&p, 1.1, &SearchBudget::default()).unwrap();
        assert_eq!(t.degree(), 168);
        assert_eq!(cert.origin, "regular");
        assert_eq!(riemann_hurwitz_genus(p.signature(), 168).unwrap(), 3);
    }
}
