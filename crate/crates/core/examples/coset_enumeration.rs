//! Coset tables of the (2,3,7) triangle group.

use percol::hyp::{is_torsion_free, low_index_subgroups, todd_coxeter, triangle_group, Word};

fn main() -> percol::Result<()> {
    let g = triangle_group(2, 3, 7)?;
    let names = g.names().to_vec();

    let whole = todd_coxeter(&g, &[Word::parse("x", &names)?, Word::parse("y", &names)?], 100)?;
    println!("index of <x, y>: {}", whole.degree());

    let subs = low_index_subgroups(&g, 7, 1_000_000)?;
    println!("{} subgroups of index <= 7:", subs.len());
    for s in &subs {
        println!(
            "  degree {}, cycle types x {:?} y {:?} z {:?}, torsion-free {}",
            s.degree(),
            s.cycle_lengths(0),
            s.cycle_lengths(1),
            s.cycle_lengths(2),
            is_torsion_free(&g, s)
        );
    }
    if let Some(s) = subs.iter().find(|s| s.degree() == 7) {
        // enumerate again from Schreier generators
        let again = todd_coxeter(&g, &s.schreier_generators(), 1000)?;
        println!("re-enumerated from {} Schreier generators: index {}", s.schreier_generators().len(), again.degree());
        let core = s.regular_representation(200)?;
        println!("normal core: index {}, torsion-free {}", core.degree(), is_torsion_free(&g, &core));
    }
    Ok(())
}
