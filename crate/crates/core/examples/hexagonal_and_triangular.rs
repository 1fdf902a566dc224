//! Lattice pipelines on the other bundled Euclidean tilings.

use percol::colouring::{colour_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::verify::check_proper;

fn main() -> percol::Result<()> {
    for name in ["hexagonal", "triangular", "kings", "star-hexagonal"] {
        let pg = corpus::by_name(name)?;
        let out = colour_pipeline(&pg, &PipelineOptions::default())?;
        let r = &out.report;
        println!(
            "{name:15} palette {}  index {:3}  quotient {:3}v {:3}e  {}  proper(r=8) {}",
            r.palette,
            r.index,
            r.quotient_vertices,
            r.quotient_edges,
            r.strategy,
            check_proper(&out.colouring, &pg, 8)?.pass
        );
    }
    Ok(())
}
