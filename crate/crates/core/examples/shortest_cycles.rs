//! Shortest cycles that do not lift to closed cycles, on torus quotients of
//! the square lattice.

use percol::io::corpus;
use percol::voltage::{shortest_noncontractible, SubgroupDescriptor};

fn main() -> percol::Result<()> {
    let pg = corpus::square();
    for (a, b) in [(3, 3), (4, 4), (6, 6), (2, 5)] {
        let t = SubgroupDescriptor::diagonal(a, b)?;
        println!("diag({a},{b}): {}", shortest_noncontractible(&pg, &t)?);
    }
    Ok(())
}
