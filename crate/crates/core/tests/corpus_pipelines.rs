use percol::colouring::{colour_pipeline, PipelineOptions};
use percol::io::corpus;
use percol::io::json::{parse_colouring, parse_periodic_graph, serialize_colouring, serialize_periodic_graph};
use percol::io::svg::{patch_layout, render_svg, RenderMode};
use percol::verify::{check_periodic, check_proper};
use percol::voltage::GroupKind;

/// Examples that are expected to fail the pipeline, with the reason.
const REJECTED: &[(&str, &str)] = &[("path", "end estimate")];

#[test]
fn every_example_runs_its_pipeline() {
    for (name, _) in corpus::EXAMPLES {
        let pg = corpus::by_name(name).unwrap();
        assert!(pg.validate().is_pass(), "{name}");
        let res = colour_pipeline(&pg, &PipelineOptions::default());
        if let Some((_, why)) = REJECTED.iter().find(|r| r.0 == *name) {
            let e = res.err().unwrap_or_else(|| panic!("{name} should be rejected"));
            assert!(e.to_string().contains(why), "{name}: {e}");
            continue;
        }
        let out = res.unwrap_or_else(|e| panic!("{name}: {e}"));
        let r = match pg.kind() {
            GroupKind::EuclideanLattice => 10,
            GroupKind::Fuchsian => 3,
        };
        assert!(check_proper(&out.colouring, &pg, r).unwrap().pass, "{name}");
        assert!(check_periodic(&out.colouring, &pg, 50, 3).unwrap().pass, "{name}");
        let text = serialize_colouring(&out.colouring);
        let back = parse_colouring(&text, &pg).unwrap();
        assert_eq!(back.colours, out.colouring.colours, "{name}");
    }
}

#[test]
fn heptagonal_json_is_byte_stable() {
    let text = serialize_periodic_graph(&corpus::heptagonal_triangulation());
    let once = serialize_periodic_graph(&parse_periodic_graph(&text).unwrap());
    let twice = serialize_periodic_graph(&parse_periodic_graph(&once).unwrap());
    assert_eq!(text, once);
    assert_eq!(once, twice);
}

#[test]
fn poincare_render_stays_in_the_disc() {
    let pg = corpus::heptagonal_triangulation();
    let (pts, edges, _) = patch_layout(&pg, 3).unwrap();
    assert!(pts.iter().all(|p| p[0].hypot(p[1]) < 1.0));
    let out = colour_pipeline(&pg, &PipelineOptions::default()).unwrap();
    let svg = render_svg(&pg, Some(&out.colouring), 3, RenderMode::Poincare).unwrap();
    assert_eq!(svg.matches("<circle cx").count(), pts.len());
    assert_eq!(svg.matches("<path").count() + svg.matches("<line").count(), edges.len());
}
