//! Deterministic SVG output for plane scenes. Coordinates are printed with
//! nine decimal places so repeated runs produce byte-identical files.

use super::{PlaneError, PlaneScene};
use crate::numerics::C;
use std::fmt::Write as _;
use std::path::Path;

fn fmt9(x: f64) -> String {
    // Avoid "-0.000000000" so output is stable across sign-of-zero noise.
    let s = format!("{:.9}", x);
    if s == "-0.000000000" {
        "0.000000000".into()
    } else {
        s
    }
}

/// Render a scene to an SVG 1.1 string. The y axis is negated so that
/// mathematically counterclockwise figures appear counterclockwise on
/// screen. The viewBox is the bounding box of all geometry with a 5%
/// margin on each side.
pub fn render_svg_string(scene: &PlaneScene) -> Result<String, PlaneError> {
    let mut pts: Vec<C> = Vec::new();
    for t in &scene.triangles {
        pts.extend_from_slice(&t.vertices());
    }
    for (p, _) in &scene.annotations {
        pts.push(*p);
    }
    if pts.is_empty() {
        return Err(PlaneError::Degenerate("empty scene".into()));
    }
    let min_x = pts.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pts.iter().map(|p| -p.im).fold(f64::INFINITY, f64::min);
    let max_y = pts.iter().map(|p| -p.im).fold(f64::NEG_INFINITY, f64::max);
    let w = (max_x - min_x).max(1e-9);
    let h = (max_y - min_y).max(1e-9);
    let margin = 0.05 * w.max(h);
    let (vx, vy) = (min_x - margin, min_y - margin);
    let (vw, vh) = (w + 2.0 * margin, h + 2.0 * margin);

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt9(vx),
        fmt9(vy),
        fmt9(vw),
        fmt9(vh)
    )
    .expect("string write");
    let stroke = 0.004 * vw.max(vh);
    for t in &scene.triangles {
        let v = t.vertices();
        let fill = if t.degenerate {
            "#d05050"
        } else if t.orientation > 0 {
            "#cfe0f5"
        } else {
            "#f5e2cf"
        };
        writeln!(
            out,
            "  <polygon points=\"{},{} {},{} {},{}\" fill=\"{}\" stroke=\"#303030\" stroke-width=\"{}\"/>",
            fmt9(v[0].re),
            fmt9(-v[0].im),
            fmt9(v[1].re),
            fmt9(-v[1].im),
            fmt9(v[2].re),
            fmt9(-v[2].im),
            fill,
            fmt9(stroke)
        )
        .expect("string write");
    }
    let font = 0.03 * vw.max(vh);
    for (p, label) in &scene.annotations {
        writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#000000\">{}</text>",
            fmt9(p.re),
            fmt9(-p.im),
            fmt9(font),
            escape(label)
        )
        .expect("string write");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Render a scene to a file; see [`render_svg_string`].
pub fn render_svg(scene: &PlaneScene, path: &Path) -> Result<(), PlaneError> {
    std::fs::write(path, render_svg_string(scene)?)?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
