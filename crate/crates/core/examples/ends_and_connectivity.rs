//! End counts and patch connectivity of the bundled graphs.

use percol::io::corpus;
use percol::voltage::{build_patch, estimate_ends, patch_connectivity, Cover};

fn main() -> percol::Result<()> {
    for (name, _) in corpus::EXAMPLES {
        let pg = corpus::by_name(name)?;
        let ends = estimate_ends(&pg, 2, 6)?;
        let cover = Cover::new(&pg)?;
        let patch = build_patch(&pg, &cover.root(), 4)?;
        let conn = patch_connectivity(&patch, 3)?;
        println!("{name:25} ends {ends}  connectivity {conn:?}");
    }
    Ok(())
}
