//! Orient every edge from the smaller colour to the larger.

use percol::colouring::{euclid_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::linegraph::{check_orientation, periodic_orientation};
use percol::voltage::Cover;

fn main() -> percol::Result<()> {
    let pg = corpus::square();
    let pc = euclid_pipeline(&pg, &PipelineOptions::default())?.colouring;
    let o = periodic_orientation(&pc, &pg)?;
    let cover = Cover::new(&pg)?;
    let root = cover.root();
    for (i, d) in pg.darts.iter().enumerate() {
        println!("dart {:?} from the origin: forward = {}", d.voltage, o.is_forward(&cover, &root, i));
    }
    let rep = check_orientation(&o, &pg, 8)?;
    println!(
        "radius 8: {} edges, antisymmetry failures {}, invariance failures {}",
        rep.edges, rep.antisymmetry_failures, rep.invariance_failures
    );
    Ok(())
}
