//! SVG rendering of cover patches.

use std::fmt::Write;
use std::str::FromStr;

use crate::colouring::ColourSource;
use crate::error::{Error, Result};
use crate::voltage::{Cover, CoverVertex, PeriodicGraph, DEFAULT_PATCH_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    Euclidean,
    Poincare,
}

impl FromStr for RenderMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Self::Euclidean),
            "poincare" => Ok(Self::Poincare),
            _ => Err(Error::argument(format!("unknown render mode {s:?} (euclidean | poincare)"))),
        }
    }
}

const PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#9a6324",
    "#469990",
];
const MONO: &str = "#333333";
const SIZE: f64 = 600.0;

fn fill(c: u32) -> String {
    match PALETTE.get(c as usize) {
        Some(s) => s.to_string(),
        None => format!("hsl({},60%,45%)", (c as u64 * 137) % 360),
    }
}

/// Positions, edges and the cover vertices they belong to.
pub type Layout = (Vec<[f64; 2]>, Vec<(usize, usize)>, Vec<CoverVertex>);

/// Vertex positions and edges of the radius-`r` patch, in drawing
/// coordinates (cartesian for lattices, the unit disc otherwise).
pub fn patch_layout(pg: &PeriodicGraph, r: usize) -> Result<Layout> {
    let cover = Cover::new(pg)?;
    let patch = cover.patch(&cover.root(), r, DEFAULT_PATCH_CAP)?;
    let metric = pg.lattice().map(|l| l.metric().clone());
    let pts = patch
        .vertices
        .iter()
        .map(|v| {
            let p = cover.position(v);
            match &metric {
                Some(m) => m.to_cartesian(p),
                None => p,
            }
        })
        .collect();
    Ok((pts, patch.edges.clone(), patch.vertices))
}

/// Deterministic SVG 1.1 document of the radius-`r` patch. Without a
/// colouring every vertex is drawn in one colour.
pub fn render_svg(pg: &PeriodicGraph, colouring: Option<&dyn ColourSource>, r: usize, mode: RenderMode) -> Result<String> {
    if pg.geometry.len() != pg.orbit_count {
        return Err(Error::argument("rendering needs geometry for every orbit"));
    }
    let (pts, edges, vertices) = patch_layout(pg, r)?;
    let colours: Vec<String> = vertices
        .iter()
        .map(|v| colouring.map_or_else(|| MONO.to_string(), |c| fill(c.colour_of(v))))
        .collect();

    // world -> screen
    let (centre, scale) = match mode {
        RenderMode::Poincare => ([0.0, 0.0], SIZE / 2.0 * 0.95),
        RenderMode::Euclidean => {
            let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
            for p in &pts {
                for i in 0..2 {
                    lo[i] = lo[i].min(p[i]);
                    hi[i] = hi[i].max(p[i]);
                }
            }
            let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
            ([(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0], SIZE * 0.9 / span)
        }
    };
    let screen = |p: [f64; 2]| [SIZE / 2.0 + (p[0] - centre[0]) * scale, SIZE / 2.0 - (p[1] - centre[1]) * scale];
    let radius = match mode {
        RenderMode::Poincare => 4.0,
        RenderMode::Euclidean => (0.12 * scale).clamp(2.0, 10.0),
    };

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.0}" height="{SIZE:.0}" viewBox="0 0 {SIZE:.0} {SIZE:.0}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if mode == RenderMode::Poincare {
        writeln!(
            s,
            r##"<circle class="boundary" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#000000" stroke-width="1"/>"##,
            SIZE / 2.0,
            SIZE / 2.0,
            scale
        )
        .unwrap();
    }
    writeln!(s, r##"<g class="edges" stroke="#888888" stroke-width="1" fill="none">"##).unwrap();
    for &(a, b) in &edges {
        let (p, q) = (pts[a], pts[b]);
        let (sp, sq) = (screen(p), screen(q));
        let arc = match mode {
            RenderMode::Poincare => orthogonal_circle(p, q),
            RenderMode::Euclidean => None,
        };
        match arc {
            Some((_, rad)) => {
                // sweep flag in screen coordinates (y flipped)
                let cross = (sp[0] - SIZE / 2.0) * (sq[1] - SIZE / 2.0) - (sp[1] - SIZE / 2.0) * (sq[0] - SIZE / 2.0);
                let sweep = u8::from(cross > 0.0);
                writeln!(
                    s,
                    r#"<path d="M {:.3} {:.3} A {:.3} {:.3} 0 0 {} {:.3} {:.3}"/>"#,
                    sp[0],
                    sp[1],
                    rad * scale,
                    rad * scale,
                    sweep,
                    sq[0],
                    sq[1]
                )
                .unwrap();
            }
            None => {
                writeln!(s, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, sp[0], sp[1], sq[0], sq[1]).unwrap();
            }
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g class="vertices">"#).unwrap();
    for (p, c) in pts.iter().zip(&colours) {
        let sp = screen(*p);
        writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="{radius:.3}" fill="{c}"/>"#, sp[0], sp[1]).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

/// Circle through `p` and `q` orthogonal to the unit circle, as
/// `(centre, radius)`; `None` when the geodesic is a diameter.
pub fn orthogonal_circle(p: [f64; 2], q: [f64; 2]) -> Option<([f64; 2], f64)> {
    // c·p = (|p|² + 1) / 2 and c·q = (|q|² + 1) / 2
    let det = p[0] * q[1] - p[1] * q[0];
    let scale = p[0].hypot(p[1]) * q[0].hypot(q[1]);
    if det.abs() <= 1e-9 * scale.max(1e-12) || det.abs() < 1e-12 {
        return None;
    }
    let rp = (p[0] * p[0] + p[1] * p[1] + 1.0) / 2.0;
    let rq = (q[0] * q[0] + q[1] * q[1] + 1.0) / 2.0;
    let c = [(rp * q[1] - rq * p[1]) / det, (p[0] * rq - q[0] * rp) / det];
    let r2 = c[0] * c[0] + c[1] * c[1] - 1.0;
    (r2 > 0.0).then(|| (c, r2.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{euclid_pipeline, hyp_pipeline};
    use crate::io::corpus;

    #[test]
    fn checkerboard_render() {
        let pg = corpus::square();
        let out = euclid_pipeline(&pg, &Default::default()).unwrap();
        let svg = render_svg(&pg, Some(&out.colouring), 6, RenderMode::Euclidean).unwrap();
        assert_eq!(svg, render_svg(&pg, Some(&out.colouring), 6, RenderMode::Euclidean).unwrap());
        // 85 vertices in the radius-6 diamond, two fills
        assert_eq!(svg.matches("<circle").count(), 85);
        let fills: std::collections::BTreeSet<&str> =
            svg.match_indices("fill=\"#").map(|(i, _)| &svg[i + 6..i + 13]).collect();
        assert_eq!(fills.len(), 2, "{fills:?}");
    }

    #[test]
    fn monochrome_and_trivial() {
        let pg = corpus::square();
        let svg = render_svg(&pg, None, 0, RenderMode::Euclidean).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(MONO));
    }

    #[test]
    fn poincare_inside_disc() {
        let pg = corpus::heptagonal_triangulation();
        let (pts, _, _) = patch_layout(&pg, 3).unwrap();
        assert!(pts.iter().all(|p| p[0].hypot(p[1]) < 1.0));
        let out = hyp_pipeline(&pg, &Default::default()).unwrap();
        let svg = render_svg(&pg, Some(&out.colouring), 3, RenderMode::Poincare).unwrap();
        assert!(svg.contains("class=\"boundary\""));
        assert!(svg.contains(" A "));
    }

    #[test]
    fn arcs_are_orthogonal() {
        let (p, q) = ([0.3, 0.1], [-0.2, 0.5]);
        let (c, r) = orthogonal_circle(p, q).unwrap();
        for x in [p, q] {
            assert!(((x[0] - c[0]).hypot(x[1] - c[1]) - r).abs() < 1e-12);
        }
        assert!((c[0] * c[0] + c[1] * c[1] - r * r - 1.0).abs() < 1e-12);
        assert!(orthogonal_circle([0.2, 0.2], [-0.4, -0.4]).is_none());
    }
}
