mod common;

use common::*;
use proptest::prelude::*;

use percol::hyp::triangle_group;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn euclidean_group_axioms(g in 0usize..3, a in letters(3, 8), b in letters(3, 8), c in letters(3, 8)) {
        euclid_axioms(g, &a, &b, &c)?;
    }

    #[test]
    fn moebius_length_237(h in letters(3, 8), g in letters(3, 6)) {
        moebius_lengths(&triangle_group(2, 3, 7).unwrap(), &h, &g)?;
    }

    #[test]
    fn moebius_length_245(h in letters(3, 8), g in letters(3, 6)) {
        moebius_lengths(&triangle_group(2, 4, 5).unwrap(), &h, &g)?;
    }

    #[test]
    fn reduced_basis_square(e in prop::array::uniform4(-30i64..=30)) {
        reduced_basis(e, false)?;
    }

    #[test]
    fn reduced_basis_hexagonal(e in prop::array::uniform4(-30i64..=30)) {
        reduced_basis(e, true)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn coset_tables_of_psl27(gens in prop::collection::vec(letters(3, 10), 0..3)) {
        coset_soundness(&psl27(), 168, &gens)?;
    }
}

#[test]
fn whole_psl27_has_168_cosets() {
    let t = percol::hyp::todd_coxeter(&psl27(), &[], 100_000).unwrap();
    assert_eq!(t.degree(), 168);
}
