use std::fmt::Write as _;

use crate::error::{bail_arg, Result};
use crate::geometry::{Density, PointCloud};

const LIGHT: &str = "#9ecae1";
const DARK: &str = "#08519c";

/// SVG of the unions of balls of radius θr (light) and r (dark) around a
/// planar point cloud. The view box is the density's box when given, else
/// the points' bounding box padded by θr.
pub fn render_balls(
    points: &PointCloud,
    r: f64,
    theta: f64,
    view: Option<&Density>,
) -> Result<String> {
    if points.dim() != 2 {
        bail_arg!(
            "ball rendering supports d = 2 only, got d = {}",
            points.dim()
        );
    }
    if !(r >= 0.0 && theta >= 1.0) || !r.is_finite() || !theta.is_finite() {
        bail_arg!("render needs r ≥ 0 and theta ≥ 1, got r={r}, theta={theta}");
    }
    let outer = theta * r;
    let (lo, hi) = match view {
        Some(density) => {
            if density.dim() != 2 {
                bail_arg!("view density must be planar");
            }
            let (lo, hi) = density.bounds();
            ([lo[0], lo[1]], [hi[0], hi[1]])
        }
        None if points.is_empty() => ([0.0, 0.0], [1.0, 1.0]),
        None => {
            let mut lo = [f64::INFINITY; 2];
            let mut hi = [f64::NEG_INFINITY; 2];
            for p in points.iter() {
                for a in 0..2 {
                    lo[a] = lo[a].min(p[a] - outer);
                    hi[a] = hi[a].max(p[a] + outer);
                }
            }
            if hi[0] - lo[0] == 0.0 {
                (lo[0], hi[0]) = (lo[0] - 0.5, hi[0] + 0.5);
            }
            if hi[1] - lo[1] == 0.0 {
                (lo[1], hi[1]) = (lo[1] - 0.5, hi[1] + 0.5);
            }
            (lo, hi)
        }
    };
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {w} {h}" width="600" height="{}">"#,
        lo[0],
        lo[1],
        (600.0 * h / w).round()
    )
    .unwrap();
    // flip y so the picture has the usual orientation
    writeln!(
        svg,
        r#"<g transform="translate(0 {}) scale(1 -1)">"#,
        lo[1] + hi[1]
    )
    .unwrap();
    for (radius, color, class) in [(outer, LIGHT, "outer"), (r, DARK, "inner")] {
        writeln!(svg, r#"<g class="{class}" fill="{color}" stroke="none">"#).unwrap();
        for p in points.iter() {
            writeln!(svg, r#"<circle cx="{}" cy="{}" r="{radius}"/>"#, p[0], p[1]).unwrap();
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
