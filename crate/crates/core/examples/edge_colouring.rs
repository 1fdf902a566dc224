//! Periodic edge colouring through the line graph.

use percol::colouring::PipelineOptions;
use percol::io::corpus;
use percol::linegraph::{check_edge_colouring, line_planarity_check, periodic_edge_colouring};

fn main() -> percol::Result<()> {
    let hex = corpus::hexagonal();
    let ec = periodic_edge_colouring(&hex, &PipelineOptions::default())?;
    println!("hexagonal: {}", ec.check.summary());
    println!(
        "  {} edge orbits, palette {}, incidence check: {}",
        ec.edge_orbits.len(),
        ec.colouring.palette,
        check_edge_colouring(&ec, &hex, 8)?.pass
    );

    for name in ["square", "star-hexagonal", "kings"] {
        let rep = line_planarity_check(&corpus::by_name(name)?, 6)?;
        println!("{name}: {}", rep.summary());
        for w in rep.witnesses.iter().take(1) {
            println!("  witness {}: {:?}", w.kind, w.vertices);
        }
    }
    match periodic_edge_colouring(&corpus::square(), &PipelineOptions::default()) {
        Ok(_) => println!("square: unexpectedly coloured"),
        Err(e) => println!("square: {e}"),
    }
    Ok(())
}
