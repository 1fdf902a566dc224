//! Translation lengths in the (2,3,7) triangle group.

use percol::hyp::{classify_and_length, triangle_group, Word};

fn main() -> percol::Result<()> {
    let g = triangle_group(2, 3, 7)?;
    let names = g.names().to_vec();
    for w in ["x", "y", "z", "xy^-1", "xzxz^-1", "xyxy^-1", "z^2xz^-2x"] {
        let word = Word::parse(w, &names)?;
        let (class, len) = classify_and_length(&g.evaluate(&word));
        println!("{w:12} {class:?} {len:.6}");
    }
    Ok(())
}
