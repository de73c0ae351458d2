//! Minimal SVG emitter for zero scatters.

use crate::commands::rational;
use crate::PlotArgs;
use anyhow::{Context, Result};
use ladderrel::asym::{asymptote, Feature};
use ladderrel::zeros::ZeroSet;
use ladderrel::Error;
use std::fmt::Write;

const SIZE: f64 = 640.0;
const PAD: f64 = 48.0;

struct Frame {
    x0: f64,
    y0: f64,
    span: f64,
}

impl Frame {
    fn fit(pts: &[(f64, f64)]) -> Frame {
        let (mut xa, mut xb, mut ya, mut yb) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            xa = xa.min(x);
            xb = xb.max(x);
            ya = ya.min(y);
            yb = yb.max(y);
        }
        if !xa.is_finite() {
            return Frame { x0: -1.0, y0: -1.0, span: 2.0 };
        }
        let span = (xb - xa).max(yb - ya).max(1e-12) * 1.1;
        Frame { x0: (xa + xb - span) / 2.0, y0: (ya + yb - span) / 2.0, span }
    }

    fn sx(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / self.span * (SIZE - 2.0 * PAD)
    }

    fn sy(&self, y: f64) -> f64 {
        SIZE - PAD - (y - self.y0) / self.span * (SIZE - 2.0 * PAD)
    }

    fn len(&self, r: f64) -> f64 {
        r / self.span * (SIZE - 2.0 * PAD)
    }
}

fn pair(s: &str, n: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| Error::Invalid(format!("bad overlay {s:?}")))?;
    if v.len() != n {
        return Err(Error::Invalid(format!("overlay {s:?} needs {n} numbers")).into());
    }
    Ok(v)
}

/// Render points with optional circles `(cx, cy, r)` and marks.
pub fn render(points: &[(f64, f64)], circles: &[(f64, f64, f64)], marks: &[(f64, f64)], title: Option<&str>) -> String {
    let mut extent: Vec<(f64, f64)> = points.to_vec();
    extent.extend(marks);
    for &(cx, cy, r) in circles {
        extent.push((cx - r, cy - r));
        extent.push((cx + r, cy + r));
    }
    let f = Frame::fit(&extent);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (lo, hi) = (PAD, SIZE - PAD);
    let _ = writeln!(s, r#"<rect x="{lo}" y="{lo}" width="{w}" height="{w}" fill="none" stroke="black"/>"#, w = hi - lo);
    if f.x0 < 0.0 && f.x0 + f.span > 0.0 {
        let x = f.sx(0.0);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{lo}" x2="{x:.2}" y2="{hi}" stroke="#999" stroke-dasharray="4 3"/>"##);
    }
    if f.y0 < 0.0 && f.y0 + f.span > 0.0 {
        let y = f.sy(0.0);
        let _ = writeln!(s, r##"<line x1="{lo}" y1="{y:.2}" x2="{hi}" y2="{y:.2}" stroke="#999" stroke-dasharray="4 3"/>"##);
    }
    let label = |v: f64| format!("{v:.4}");
    let _ = writeln!(s, r#"<text x="{lo}" y="{}" font-size="12">{}</text>"#, hi + 16.0, label(f.x0));
    let _ = writeln!(s, r#"<text x="{hi}" y="{}" font-size="12" text-anchor="end">{}</text>"#, hi + 16.0, label(f.x0 + f.span));
    let _ = writeln!(s, r#"<text x="{}" y="{hi}" font-size="12" text-anchor="end">{}</text>"#, lo - 4.0, label(f.y0));
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#, lo - 4.0, lo + 12.0, label(f.y0 + f.span));
    if let Some(t) = title {
        let t = t.replace('&', "&amp;").replace('<', "&lt;");
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{t}</text>"#, SIZE / 2.0, PAD / 2.0);
    }
    for &(x, y) in points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="black"/>"#, f.sx(x), f.sy(y));
    }
    for &(cx, cy, r) in circles {
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#c00"/>"##, f.sx(cx), f.sy(cy), f.len(r));
    }
    for &(x, y) in marks {
        let (px, py) = (f.sx(x), f.sy(y));
        let _ = writeln!(
            s,
            r##"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="#06c" stroke-width="2"/>"##,
            px - 5.0,
            py - 5.0,
            px + 5.0,
            py + 5.0,
            px - 5.0,
            py + 5.0,
            px + 5.0,
            py - 5.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn run(a: PlotArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let points = ZeroSet::from_csv(&text, 64)?.points_f64();
    let mut circles = Vec::new();
    for c in &a.circles {
        let v = pair(c, 3)?;
        circles.push((v[0], v[1], v[2]));
    }
    let mut marks = Vec::new();
    for m in &a.marks {
        let v = pair(m, 2)?;
        marks.push((v[0], v[1]));
    }
    if let (Some(f), Some(rho)) = (&a.feature, &a.rho) {
        let f: Feature = f.parse()?;
        let m = f.model();
        let pr = asymptote(f, rational(rho)?.to_f64())?;
        if m.directions.is_empty() {
            circles.push((m.offset.re, m.offset.im, pr.scale + m.shift));
        }
        marks.extend(pr.values.iter().map(|v| (v.re, v.im)));
    }
    std::fs::write(&a.out, render(&points, &circles, &marks, a.title.as_deref())).with_context(|| format!("writing {}", a.out.display()))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_is_square_and_contains_points() {
        let f = Frame::fit(&[(0.0, 0.0), (2.0, 1.0)]);
        for (x, y) in [(0.0, 0.0), (2.0, 1.0)] {
            assert!((PAD..=SIZE - PAD).contains(&f.sx(x)));
            assert!((PAD..=SIZE - PAD).contains(&f.sy(y)));
        }
    }

    #[test]
    fn svg_has_every_point() {
        let s = render(&[(0.0, 1.0), (1.0, 0.0), (0.5, 0.5)], &[(0.0, 0.0, 1.0)], &[(0.5, 0.0)], Some("a<b"));
        assert_eq!(s.matches("fill=\"black\"").count(), 3);
        assert!(s.contains("a&lt;b"));
        assert!(s.ends_with("</svg>\n"));
    }
}
