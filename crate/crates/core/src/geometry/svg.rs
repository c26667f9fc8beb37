use super::{PointCloud, Polygon};
use crate::error::{Error, Result};
use crate::substitution::{AffineSimilarity, Patch};
use num::complex::Complex64;
use std::fmt::Write;

const PALETTE: [&str; 8] = ["#e8b04a", "#4a7fb5", "#c8553d", "#6b9e5a", "#8d6cab", "#d98cb3", "#5bb0b0", "#9a8f6b"];

/// What to draw. Prototile shapes are numeric vertex lists so one-dimensional
/// tiles can be drawn as thin rectangles.
#[derive(Clone, Debug)]
pub enum RenderInput<'a> {
    Patch { patch: &'a Patch, shapes: &'a [Vec<Complex64>] },
    Clouds(&'a [PointCloud]),
    Subdivision { parent: &'a Polygon, pieces: &'a [(AffineSimilarity, Polygon)] },
    /// Several inputs laid out left to right.
    Row(Vec<RenderInput<'a>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    /// Width of the drawing in SVG user units.
    pub width: f64,
    /// Margin as a fraction of the larger bounding-box side.
    pub margin: f64,
    pub dot_radius: f64,
    pub stroke: String,
    pub stroke_width: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style { width: 1000.0, margin: 0.05, dot_radius: 0.5, stroke: "#222222".into(), stroke_width: 0.6 }
    }
}

impl Style {
    /// Default style with dots sized so `points` dots read as a filled region.
    pub fn for_points(points: usize) -> Style {
        let d = Style::default();
        let dot_radius = (0.45 * d.width / (points.max(1) as f64).sqrt()).clamp(0.5, 3.0);
        Style { dot_radius, ..d }
    }
}

enum Item {
    Path { pts: Vec<Complex64>, color: usize },
    Dot { at: Complex64, color: usize },
}

fn collect(input: &RenderInput<'_>, offset: Complex64, out: &mut Vec<Item>) -> Result<()> {
    match input {
        RenderInput::Patch { patch, shapes } => {
            if patch.is_empty() {
                return Err(Error::input("empty patch"));
            }
            for t in &patch.tiles {
                let shape = shapes
                    .get(t.prototile)
                    .ok_or_else(|| Error::input(format!("no shape for prototile {}", t.prototile)))?;
                let pts = shape.iter().map(|&z| t.placement.apply_complex(z) + offset).collect();
                out.push(Item::Path { pts, color: t.prototile });
            }
        }
        RenderInput::Clouds(clouds) => {
            if clouds.iter().all(PointCloud::is_empty) {
                return Err(Error::input("empty point clouds"));
            }
            for c in clouds.iter() {
                out.extend(c.points.iter().map(|&z| Item::Dot { at: z + offset, color: c.component }));
            }
        }
        RenderInput::Subdivision { parent, pieces } => {
            out.push(Item::Path { pts: parent.embedded().iter().map(|z| z + offset).collect(), color: 0 });
            for (k, (g, p)) in pieces.iter().enumerate() {
                let pts = p.transform(g).embedded().iter().map(|z| z + offset).collect();
                out.push(Item::Path { pts, color: 1 + k % (PALETTE.len() - 1) });
            }
        }
        RenderInput::Row(parts) => {
            if parts.is_empty() {
                return Err(Error::input("empty figure row"));
            }
            let mut x = offset.re;
            for part in parts {
                let mut items = Vec::new();
                collect(part, Complex64::new(0.0, 0.0), &mut items)?;
                let (lo, hi) = bounds(&items);
                let shift = Complex64::new(x - lo.re, offset.im);
                for it in items.iter_mut() {
                    match it {
                        Item::Path { pts, .. } => pts.iter_mut().for_each(|z| *z += shift),
                        Item::Dot { at, .. } => *at += shift,
                    }
                }
                x += (hi.re - lo.re) * 1.1;
                out.extend(items);
            }
        }
    }
    Ok(())
}

fn bounds(items: &[Item]) -> (Complex64, Complex64) {
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    let mut see = |z: &Complex64| {
        lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
    };
    for it in items {
        match it {
            Item::Path { pts, .. } => pts.iter().for_each(&mut see),
            Item::Dot { at, .. } => see(at),
        }
    }
    (lo, hi)
}

/// Deterministic SVG 1.1. The bounding box plus margin is mapped onto a
/// drawing `style.width` units wide, with the y axis pointing up.
pub fn render_svg(input: &RenderInput<'_>, style: &Style) -> Result<String> {
    let mut items = Vec::new();
    collect(input, Complex64::new(0.0, 0.0), &mut items)?;
    let (lo, hi) = bounds(&items);
    let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
    let pad = span * style.margin;
    let (w0, h0) = (hi.re - lo.re + 2.0 * pad, hi.im - lo.im + 2.0 * pad);
    let k = style.width / w0;
    let height = h0 * k;
    let map = |z: Complex64| ((z.re - lo.re + pad) * k, (hi.im + pad - z.im) * k);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        style.width, height, style.width, height
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for it in &items {
        match it {
            Item::Path { pts, color } => {
                let mut d = String::new();
                for (n, z) in pts.iter().enumerate() {
                    let (x, y) = map(*z);
                    write!(d, "{}{:.3},{:.3} ", if n == 0 { "M" } else { "L" }, x, y).unwrap();
                }
                d.push('Z');
                writeln!(
                    s,
                    r#"<path d="{d}" fill="{}" fill-opacity="0.85" stroke="{}" stroke-width="{}"/>"#,
                    PALETTE[color % PALETTE.len()],
                    style.stroke,
                    style.stroke_width
                )
                .unwrap();
            }
            Item::Dot { at, color } => {
                let (x, y) = map(*at);
                writeln!(
                    s,
                    r#"<circle cx="{x:.3}" cy="{y:.3}" r="{}" fill="{}"/>"#,
                    style.dot_radius,
                    PALETTE[color % PALETTE.len()]
                )
                .unwrap();
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_inputs_rejected() {
        let p = Patch::default();
        let shapes: Vec<Vec<Complex64>> = vec![];
        assert!(render_svg(&RenderInput::Patch { patch: &p, shapes: &shapes }, &Style::default()).is_err());
        assert!(render_svg(&RenderInput::Clouds(&[]), &Style::default()).is_err());
    }

    #[test]
    fn cloud_svg_is_deterministic_and_scaled() {
        let clouds = [PointCloud::new(vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 1.0)], 1)];
        let a = render_svg(&RenderInput::Clouds(&clouds), &Style::default()).unwrap();
        let b = render_svg(&RenderInput::Clouds(&clouds), &Style::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#"viewBox="0 0 1000.000 545.455""#));
        assert_eq!(a.matches("<circle").count(), 2);
        assert!(a.contains(r#"<circle cx="45.455" cy="500.000" r="0.5""#));
    }
}
