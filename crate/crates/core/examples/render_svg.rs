//! Write SVG renderings of the checkerboard and the coloured {3,7} patch.
//! Usage: render_svg [OUTDIR]

use percol::colouring::{colour_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::io::svg::{render_svg, RenderMode};

fn main() -> percol::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string());
    for (name, r, mode) in [
        ("square", 6, RenderMode::Euclidean),
        ("hexagonal", 6, RenderMode::Euclidean),
        ("heptagonal", 3, RenderMode::Poincare),
    ] {
        let pg = corpus::by_name(name)?;
        let out = colour_pipeline(&pg, &PipelineOptions::default())?;
        let svg = render_svg(&pg, Some(&out.colouring), r, mode)?;
        let path = format!("{dir}/{name}.svg");
        std::fs::write(&path, svg).map_err(|e| percol::Error::resource(e.to_string()))?;
        println!("{path}");
    }
    Ok(())
}
