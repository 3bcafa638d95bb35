use std::fmt::Write;

use num_complex::Complex64;

use super::{geom, Layout, RenderError};
use crate::tessmap::Geometry;

pub const DEFAULT_PALETTE: [&str; 8] =
    ["#b2182b", "#d6604d", "#f4a582", "#fddbc7", "#d1e5f0", "#92c5de", "#4393c3", "#2166ac"];

/// Colour for vertices outside the census horizon.
const UNCOUNTED: &str = "#999999";

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Vertex fill by generation, cycled.
    pub palette: Vec<String>,
    pub stroke: String,
    pub stroke_width: f64,
    /// Draw only vertices with generation at most this.
    pub max_generation: Option<usize>,
    /// Draw hyperbolic edges as circular arcs rather than chords.
    pub geodesic_arcs: bool,
    /// Draw the unit circle behind a hyperbolic patch.
    pub boundary_circle: bool,
    /// Width and height of the square canvas.
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            stroke: "#333333".into(),
            stroke_width: 0.8,
            max_generation: None,
            geodesic_arcs: false,
            boundary_circle: false,
            size: 800.0,
        }
    }
}

/// Reads `#rrggbb` colours separated by commas.
pub fn parse_palette(s: &str) -> Result<Vec<String>, RenderError> {
    let out: Vec<String> = s.split(',').map(|t| t.trim().to_ascii_lowercase()).collect();
    for c in &out {
        let ok = c.len() == 7 && c.starts_with('#') && c[1..].chars().all(|ch| ch.is_ascii_hexdigit());
        if !ok {
            return Err(RenderError::Palette(c.clone()));
        }
    }
    Ok(out)
}

/// SVG 1.1 document with one `circle` per drawn vertex and one `path` per
/// edge whose endpoints are both drawn.
pub fn emit_svg(layout: &Layout, options: &SvgOptions) -> String {
    let drawn: Vec<Option<Complex64>> = layout
        .positions
        .iter()
        .zip(&layout.generation)
        .map(|(p, g)| {
            let p = (*p)?;
            match (options.max_generation, g) {
                (None, _) => Some(p.to_complex()),
                (Some(m), Some(g)) if *g <= m => Some(p.to_complex()),
                _ => None,
            }
        })
        .collect();

    let size = options.size;
    let (centre, scale) = match layout.geometry {
        Geometry::Euclidean => {
            let pts: Vec<Complex64> = drawn.iter().flatten().copied().collect();
            let extent = pts.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
            (Complex64::new(0.0, 0.0), 0.47 * size / extent.max(1e-9))
        }
        _ => (Complex64::new(0.0, 0.0), 0.48 * size),
    };
    let to_screen = |z: Complex64| {
        let w = (z - centre) * scale;
        (0.5 * size + w.re, 0.5 * size - w.im)
    };
    let vertex_r = match layout.geometry {
        Geometry::Euclidean => (0.08 * scale).clamp(0.5, 6.0),
        _ => 3.0,
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    if options.boundary_circle && layout.geometry == Geometry::Hyperbolic {
        let (cx, cy) = to_screen(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            r##"<circle class="boundary" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="#cccccc"/>"##,
            scale
        );
    }
    let _ = writeln!(
        out,
        r#"<g class="edges" fill="none" stroke="{}" stroke-width="{:.3}">"#,
        options.stroke, options.stroke_width
    );
    for &(a, b) in &layout.edges {
        let (Some(za), Some(zb)) = (drawn[a], drawn[b]) else {
            continue;
        };
        let (x0, y0) = to_screen(za);
        let (x1, y1) = to_screen(zb);
        let arc = if options.geodesic_arcs && layout.geometry == Geometry::Hyperbolic {
            geom::geodesic_circle(za, zb)
        } else {
            None
        };
        match arc {
            Some((c, r)) => {
                let (cx, cy) = to_screen(c);
                // Screen y points down, so a positive cross product is a clockwise turn.
                let cross = (x1 - x0) * (cy - y0) - (y1 - y0) * (cx - x0);
                let sweep = u8::from(cross > 0.0);
                let _ = writeln!(
                    out,
                    r#"<path d="M{x0:.3},{y0:.3} A{rr:.3},{rr:.3} 0 0 {sweep} {x1:.3},{y1:.3}"/>"#,
                    rr = r * scale
                );
            }
            None => {
                let _ = writeln!(out, r#"<path d="M{x0:.3},{y0:.3} L{x1:.3},{y1:.3}"/>"#);
            }
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="vertices" stroke="none">"#);
    for (v, z) in drawn.iter().enumerate() {
        let Some(z) = z else { continue };
        let (x, y) = to_screen(*z);
        let fill = match layout.generation[v] {
            Some(g) if !options.palette.is_empty() => options.palette[g % options.palette.len()].as_str(),
            _ => UNCOUNTED,
        };
        let gen = layout.generation[v].map_or(String::new(), |g| format!(r#" data-generation="{g}""#));
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{vertex_r:.2}" fill="{fill}"{gen}/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{bfs_census, central_seeds, SeedMode};
    use crate::render::layout;
    use crate::tessmap::build;

    fn escher() -> (usize, usize, Layout) {
        let map = build(&"6,8,8".parse().unwrap(), 4).unwrap().map;
        let seeds = central_seeds(&map, SeedMode::FaceVertices, None).unwrap();
        let census = bfs_census(&map, &seeds, 100).unwrap();
        let l = layout(&map, &census, Geometry::Hyperbolic).unwrap();
        (map.vertex_count(), map.edge_count(), l)
    }

    #[test]
    fn one_element_per_vertex_and_edge() {
        let (v, e, l) = escher();
        let svg = emit_svg(&l, &SvgOptions::default());
        assert_eq!(svg.matches("<circle ").count(), v);
        assert_eq!(svg.matches("<path ").count(), e);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        let arcs = emit_svg(&l, &SvgOptions { geodesic_arcs: true, ..SvgOptions::default() });
        assert_eq!(arcs.matches("<path ").count(), e);
        assert!(arcs.contains(" A"));
    }

    #[test]
    fn generation_zero_is_the_seed_face() {
        let (_, _, l) = escher();
        let svg = emit_svg(&l, &SvgOptions { max_generation: Some(0), ..SvgOptions::default() });
        assert_eq!(svg.matches("<circle ").count(), 6);
        assert_eq!(svg.matches("<path ").count(), 6);
    }

    #[test]
    fn byte_identical() {
        let (_, _, a) = escher();
        let (_, _, b) = escher();
        let o = SvgOptions { boundary_circle: true, ..SvgOptions::default() };
        assert_eq!(emit_svg(&a, &o), emit_svg(&b, &o));
    }

    #[test]
    fn palettes() {
        assert_eq!(parse_palette("#AABBCC, #000000").unwrap(), vec!["#aabbcc", "#000000"]);
        assert!(parse_palette("red").is_err());
        assert!(parse_palette("#12345").is_err());
    }
}
