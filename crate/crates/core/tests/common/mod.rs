//! Property checks shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use percol::euclid::{frac, int, reduce_basis, translation_subgroup, EuclideanIsometry, Lattice, Metric, Q, DEFAULT_WORD_BOUND};
use percol::hyp::{classify_and_length, todd_coxeter, triangle_group, FuchsianPresentation, IsometryClass, Word};

pub type Letters = Vec<(usize, bool)>;

pub fn letters(gens: usize, max_len: usize) -> impl Strategy<Value = Letters> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
}

/// Wallpaper groups given by generators: p4, p2gg-like with a glide, and p6
/// in the hexagonal frame.
pub fn wallpaper_groups() -> Vec<(&'static str, Metric, Vec<EuclideanIsometry>)> {
    let (o, l) = (int(0), int(1));
    let half = frac(1, 2);
    let glide = EuclideanIsometry::new([[l, o], [o, -l]], [half, half]).unwrap();
    let half_turn = EuclideanIsometry::new([[-l, o], [o, -l]], [o, o]).unwrap();
    let hex = Metric::hexagonal(int(1));
    // sixth turn in the frame with basis vectors at 120 degrees
    let sixth = EuclideanIsometry::new_in(&hex, [[l, -l], [l, o]], [o, o]).unwrap();
    vec![
        ("p4", Metric::identity(), vec![EuclideanIsometry::quarter_turn(), EuclideanIsometry::translation_by([l, o])]),
        ("pgg", Metric::identity(), vec![glide, half_turn, EuclideanIsometry::translation_by([o, l])]),
        ("p6", hex.clone(), vec![sixth, EuclideanIsometry::translation_by([l, o])]),
    ]
}

pub fn eval_iso(gens: &[EuclideanIsometry], w: &Letters) -> EuclideanIsometry {
    w.iter().fold(EuclideanIsometry::identity(), |acc, &(g, inv)| {
        let g = &gens[g % gens.len()];
        let x = if inv { g.inverse() } else { g.clone() };
        acc.compose(&x)
    })
}

/// Associativity, identity, inverses and evaluation as a homomorphism, with
/// exact rationals; pure translations land in the translation lattice.
pub fn euclid_axioms(group: usize, a: &Letters, b: &Letters, c: &Letters) -> Result<(), TestCaseError> {
    let groups = wallpaper_groups();
    let (_, metric, gens) = &groups[group % groups.len()];
    let (x, y, z) = (eval_iso(gens, a), eval_iso(gens, b), eval_iso(gens, c));
    let id = EuclideanIsometry::identity();
    prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
    prop_assert_eq!(x.compose(&id), x.clone());
    prop_assert_eq!(id.compose(&x), x.clone());
    prop_assert_eq!(x.compose(&x.inverse()), id.clone());
    prop_assert_eq!(x.inverse().compose(&x), id.clone());
    let ab: Letters = a.iter().chain(b).copied().collect();
    prop_assert_eq!(eval_iso(gens, &ab), x.compose(&y));
    // the commutator-like element x y x^-1 y^-1 of two translations, and
    // any pure translation, lies in the lattice
    let l = if metric.is_identity() {
        translation_subgroup(gens, DEFAULT_WORD_BOUND).unwrap()
    } else {
        percol::euclid::Lattice::with_metric([int(1), int(0)], [int(0), int(1)], metric.clone()).unwrap()
    };
    for g in [&x, &y, &z] {
        if g.is_translation() {
            prop_assert!(l.contains(g.translation()), "translation {:?} outside the lattice", g.translation());
        }
        let ps = g.point_part();
        prop_assert!(metric.preserved_by(ps));
    }
    Ok(())
}

pub fn word_of(w: &Letters) -> Word {
    Word::from_letters(w.iter().map(|&(g, inv)| percol::hyp::Letter::new(g, inv)))
}

pub const MOEBIUS_TOL: f64 = 1e-6;

/// Translation lengths: `ℓ(hⁿ) = n·ℓ(h)` and `ℓ(g h g⁻¹) = ℓ(h)`.
pub fn moebius_lengths(pres: &FuchsianPresentation, h: &Letters, g: &Letters) -> Result<(), TestCaseError> {
    let hm = pres.evaluate(&word_of(h));
    let gm = pres.evaluate(&word_of(g));
    let (class, len) = classify_and_length(&hm);
    let conj = gm.mul(&hm).mul(&gm.inverse());
    let (cclass, clen) = classify_and_length(&conj);
    prop_assert_eq!(class, cclass);
    prop_assert!((len - clen).abs() <= MOEBIUS_TOL, "conjugate length {} vs {}", clen, len);
    if class == IsometryClass::Hyperbolic {
        for n in 2..=3 {
            let (_, ln) = classify_and_length(&hm.pow(n));
            prop_assert!((ln - n as f64 * len).abs() <= MOEBIUS_TOL, "length of power {}: {} vs {}", n, ln, len);
        }
    }
    Ok(())
}

/// Reduced bases: `|b1| ≤ |b2|`, `2|b1·b2| ≤ |b1|²`, same covolume, and a
/// unimodular change of basis.
pub fn reduced_basis(entries: [i64; 4], hex: bool) -> Result<(), TestCaseError> {
    let [a, b, c, d] = entries;
    prop_assume!(a * d - b * c != 0);
    let metric = if hex { Metric::hexagonal(int(1)) } else { Metric::identity() };
    let l = Lattice::with_metric([int(a as i128), int(b as i128)], [int(c as i128), int(d as i128)], metric.clone()).unwrap();
    let r = reduce_basis(&l);
    let [b1, b2] = r.lattice.basis();
    let (n1, n2, dot) = (metric.norm2(b1), metric.norm2(b2), metric.dot(b1, b2));
    prop_assert!(n1 <= n2);
    prop_assert!((dot * int(2)).abs() <= n1);
    prop_assert_eq!(r.lattice.determinant().abs(), l.determinant().abs());
    let u = r.transform;
    prop_assert_eq!((u[0][0] * u[1][1] - u[0][1] * u[1][0]).abs(), 1);
    for (row, bv) in u.iter().zip([b1, b2]) {
        let v: [Q; 2] = [
            int(row[0] as i128) * int(a as i128) + int(row[1] as i128) * int(c as i128),
            int(row[0] as i128) * int(b as i128) + int(row[1] as i128) * int(d as i128),
        ];
        prop_assert_eq!(&v, bv);
    }
    Ok(())
}

/// PSL(2,7) as the (2,3,7) triangle group modulo `[x,y]^4`.
pub fn psl27() -> FuchsianPresentation {
    let g = triangle_group(2, 3, 7).unwrap();
    let comm = g.parse_word("xyx^-1y^-1").unwrap();
    g.with_extra_relators(vec![comm.pow(4)])
}

/// Coset tables satisfy every relator, fix coset 0 under each subgroup
/// generator, and have index dividing the group order. Enumeration may
/// define many more cosets than the index before collapsing.
pub fn coset_soundness(pres: &FuchsianPresentation, order: usize, gens: &[Letters]) -> Result<(), TestCaseError> {
    let words: Vec<Word> = gens.iter().map(word_of).collect();
    let t = todd_coxeter(pres, &words, 100 * order).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(t.satisfies(pres.relators()));
    for w in &words {
        prop_assert_eq!(t.act(0, w), 0);
    }
    prop_assert_eq!(order % t.degree(), 0, "index {} does not divide {}", t.degree(), order);
    Ok(())
}
