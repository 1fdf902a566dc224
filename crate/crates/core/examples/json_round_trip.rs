//! Canonical JSON for every bundled example.

use percol::io::corpus;
use percol::io::json::{parse_periodic_graph, serialize_periodic_graph};

fn main() -> percol::Result<()> {
    for (name, _) in corpus::EXAMPLES {
        let text = serialize_periodic_graph(&corpus::by_name(name)?);
        let again = serialize_periodic_graph(&parse_periodic_graph(&text)?);
        println!("{name:25} {:5} bytes, round trip identical: {}", text.len(), text == again);
    }
    println!("\n{}", serialize_periodic_graph(&corpus::hexagonal()));
    Ok(())
}
