//! Genus of quotient surfaces and the colour bounds that go with it.

use percol::hyp::{colour_budget, riemann_hurwitz_genus, Signature};

fn main() {
    let sig = Signature::new(0, vec![2, 3, 7]);
    for n in [84, 168, 100, 336] {
        match riemann_hurwitz_genus(&sig, n) {
            Ok(g) => println!("(0;2,3,7) index {n}: genus {g}"),
            Err(e) => println!("(0;2,3,7) index {n}: {e}"),
        }
    }
    for g in 1..=4 {
        let b = colour_budget(g).unwrap();
        println!("genus {g}: {} colours always suffice; 5 suffice once every non-contractible cycle has length >= {}", b.ringel_youngs, b.thomassen_threshold);
    }
}
