//! Translation lattice of a wallpaper group, its reduced basis and a
//! sublattice with long translations.

use percol::euclid::{reduce_basis, sublattice_for_length, translation_subgroup, DEFAULT_WORD_BOUND};
use percol::io::corpus;

fn main() -> percol::Result<()> {
    let p4 = corpus::p4_generators();
    let l = translation_subgroup(&p4, DEFAULT_WORD_BOUND)?;
    println!("p4 translations: {:?}", l.invariants());
    let reduced = reduce_basis(&l);
    println!("reduced basis transform {:?}", reduced.transform);
    for len in [1.5, 3.0, 6.5] {
        let s = sublattice_for_length(&l, len)?;
        println!("min length {len}: scale {:?}, index {}, shortest {:.3}", s.scale, s.index, s.shortest);
    }
    Ok(())
}
