//! The square lattice coloured with two colours, periodic under 2Z x 2Z.

use percol::colouring::{euclid_pipeline, ColourSource, PipelineOptions};
use percol::io::corpus;
use percol::verify::{check_periodic, check_proper};
use percol::voltage::{CoverVertex, Element};

fn main() -> percol::Result<()> {
    let pg = corpus::square();
    let out = euclid_pipeline(&pg, &PipelineOptions::default())?;
    println!(
        "palette {} on a quotient of {} vertices (index {})",
        out.colouring.palette, out.report.quotient_vertices, out.report.index
    );
    for y in (-3..=3).rev() {
        let row: String = (-3..=3)
            .map(|x| {
                let v = CoverVertex { orbit: 0, element: Element::Lattice([x, y]) };
                if out.colouring.colour_of(&v) == 0 { '#' } else { '.' }
            })
            .collect();
        println!("  {row}");
    }
    let proper = check_proper(&out.colouring, &pg, 16)?;
    let periodic = check_periodic(&out.colouring, &pg, 100, 1)?;
    println!("proper at radius 16: {}, periodic: {}", proper.pass, periodic.pass);
    Ok(())
}
