//! The {4,5} tiling via the (2,4,5) triangle group.

use percol::colouring::{hyp_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::verify::check_proper;

fn main() -> percol::Result<()> {
    let pg = corpus::order5_square_tiling();
    let out = hyp_pipeline(&pg, &PipelineOptions::default())?;
    let r = &out.report;
    println!(
        "index {}, quotient {}v/{}e, genus {}, palette {}",
        r.index, r.quotient_vertices, r.quotient_edges, r.genus, r.palette
    );
    println!("proper on the radius-3 patch: {}", check_proper(&out.colouring, &pg, 3)?.pass);
    Ok(())
}
