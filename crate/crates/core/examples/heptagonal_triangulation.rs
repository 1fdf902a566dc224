//! The {3,7} triangulation over the (2,3,7) triangle group: subgroup search,
//! quotient on the genus-3 surface, colouring and lift.

use percol::colouring::{hyp_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::verify::check_proper;

fn main() -> percol::Result<()> {
    let pg = corpus::heptagonal_triangulation();
    let start = std::time::Instant::now();
    let out = hyp_pipeline(&pg, &PipelineOptions::default())?;
    let r = &out.report;
    println!("subgroup index {} (found via {})", r.index, r.certificate.as_ref().map_or("?", |c| c.origin.as_str()));
    println!("quotient: {} vertices, {} edges, genus {}", r.quotient_vertices, r.quotient_edges, r.genus);
    println!("palette {} (Ringel-Youngs bound {}), strategy {}", r.palette, r.ringel_youngs, r.strategy);
    println!("proper on the radius-3 patch: {}", check_proper(&out.colouring, &pg, 3)?.pass);
    println!("{:.2?}", start.elapsed());
    Ok(())
}
