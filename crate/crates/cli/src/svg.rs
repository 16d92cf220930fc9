use std::fmt::Write;

use preimage_core::orbits::OrbitSet;
use preimage_core::scalar::NumberField;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Scatter plot of the finite orbit points in the complex plane, shaded
/// by word length.
pub fn scatter(k: &NumberField, s: &OrbitSet) -> String {
    let pts: Vec<(f64, f64, usize)> = s
        .points()
        .filter_map(|(p, w)| p.as_finite().map(|a| k.embed_f64(a)).map(|z| (z.re, z.im, w)))
        .filter(|(x, y, _)| x.is_finite() && y.is_finite())
        .collect();
    let extent = pts.iter().fold(1.0f64, |m, (x, y, _)| m.max(x.abs()).max(y.abs()));
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let depth = s.depth().max(1) as f64;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).expect("string write");
    writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).expect("string write");
    let c = SIZE / 2.0;
    writeln!(out, r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#ccc"/><line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#ccc"/>"##)
        .expect("string write");
    for (x, y, w) in &pts {
        let shade = (200.0 * (*w as f64) / depth) as u8;
        writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="rgb({shade},{shade},255)"/>"#, c + x * scale, c - y * scale).expect("string write");
    }
    let at_infinity = if s.contains(&preimage_core::maps::SpherePoint::Infinity) { "; contains inf" } else { "" };
    writeln!(out, r#"<text x="8" y="18" font-family="monospace" font-size="12">{} points, half-width {extent}{at_infinity}</text>"#, s.len())
        .expect("string write");
    out.push_str("</svg>\n");
    out
}
