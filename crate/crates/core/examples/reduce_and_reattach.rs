//! Strip leaves and subdivision vertices down to the square lattice, colour
//! it, then put the removed vertices back.

use percol::colouring::{euclid_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::reduction::{reattach_atoms, reduce_to_3connected, stage_orbit_counts, PaletteMode};
use percol::verify::check_proper;

fn main() -> percol::Result<()> {
    let pg = corpus::leafed_subdivided_square();
    let (reduced, trace) = reduce_to_3connected(&pg)?;
    println!("{} steps, orbits per stage {:?}", trace.steps.len(), stage_orbit_counts(&trace));
    for (i, s) in trace.steps.iter().enumerate() {
        println!("  step {i}: {}-separated atoms, inserted darts {:?}", s.connectivity_case, s.inserted);
    }

    let base = euclid_pipeline(&reduced, &PipelineOptions::default())?;
    println!("reduced graph: palette {}", base.colouring.palette);
    for mode in [PaletteMode::Reuse, PaletteMode::Fresh] {
        let (pc, rep) = reattach_atoms(&base.colouring, &trace, mode)?;
        println!(
            "{mode}: palette {}, widened {:?}, proper at radius 10: {}",
            pc.palette,
            rep.widened,
            check_proper(&pc, &pg, 10)?.pass
        );
    }

    // the full pipeline does the same in one call
    let out = euclid_pipeline(&pg, &PipelineOptions::default())?;
    println!("pipeline: palette {}", out.colouring.palette);
    Ok(())
}
