//! Polygons with exact vertices, numeric attractors, solution checks and SVG.

mod attractor;
mod svg;
mod verify;

pub use attractor::{attractor_cloud, attractor_cloud_thinned, hausdorff, match_isometry, Isometry, PointCloud};
pub use svg::{render_svg, RenderInput, Style};
pub use verify::{
    similarity_onto, subdivision_check, verify_interval_solution, verify_polygon_solution, Check, CheckResult,
    Margin, Report, Status,
};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::substitution::AffineSimilarity;
use num::complex::Complex64;

/// Default numeric tolerance for containment and disjointness.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `sum_k conj(z_k) z_{k+1} - z_k conj(z_{k+1})`; embeds to `4i` times the
/// signed area.
pub fn pseudo_area_of(vertices: &[CycNum]) -> CycNum {
    let n = vertices.len();
    let mut acc = CycNum::zero(vertices[0].order());
    for k in 0..n {
        let (a, b) = (&vertices[k], &vertices[(k + 1) % n]);
        acc = &acc + &(&(&a.complex_conj() * b) - &(a * &b.complex_conj()));
    }
    acc
}

/// A simple polygon with exact vertices, stored counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<CycNum>,
}

impl Polygon {
    /// Validates and orients the vertex list counterclockwise.
    pub fn new(mut vertices: Vec<CycNum>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {}", vertices.len())));
        }
        let order = vertices[0].order();
        if let Some(v) = vertices.iter().find(|v| v.order() != order) {
            return Err(Error::OrderMismatch(order, v.order()));
        }
        let pa = pseudo_area_of(&vertices);
        let im = pa.embed().im;
        if pa.is_zero() || im.abs() < 1e-12 {
            return Err(Error::InvalidPolygon("degenerate polygon (zero area)".into()));
        }
        if im < 0.0 {
            vertices.reverse();
        }
        let p = Polygon { vertices };
        if !p.is_simple() {
            return Err(Error::InvalidPolygon("self-intersecting polygon".into()));
        }
        Ok(p)
    }

    pub fn from_ints(order: u32, vertices: &[&[i64]]) -> Result<Self> {
        Polygon::new(vertices.iter().map(|c| CycNum::from_ints(order, c)).collect())
    }

    pub fn vertices(&self) -> &[CycNum] {
        &self.vertices
    }

    pub fn order(&self) -> u32 {
        self.vertices[0].order()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact pseudo-area; its embedding is `4i * area` with positive area.
    pub fn pseudo_area(&self) -> CycNum {
        pseudo_area_of(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        self.pseudo_area().embed().im / 4.0
    }

    pub fn embedded(&self) -> Vec<Complex64> {
        self.vertices.iter().map(CycNum::embed).collect()
    }

    /// Image under a similarity, re-oriented counterclockwise.
    pub fn transform(&self, f: &AffineSimilarity) -> Polygon {
        let mut v: Vec<CycNum> = self.vertices.iter().map(|z| f.apply(z)).collect();
        if f.conjugate() {
            v.reverse();
        }
        Polygon { vertices: v }
    }

    pub fn translate(&self, c: &CycNum) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|z| z + c).collect() }
    }

    pub fn is_convex(&self) -> bool {
        let p = self.embedded();
        let n = p.len();
        (0..n).all(|k| cross(p[(k + 1) % n] - p[k], p[(k + 2) % n] - p[(k + 1) % n]) >= -1e-12)
    }

    fn is_simple(&self) -> bool {
        let p = self.embedded();
        let n = p.len();
        for a in 0..n {
            for b in a + 1..n {
                if b == a + 1 || (a == 0 && b == n - 1) {
                    continue;
                }
                if segments_cross(p[a], p[(a + 1) % n], p[b], p[(b + 1) % n]) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_pseudo_area() {
        let sq = Polygon::from_ints(8, &[&[0], &[1], &[1, 0, 1], &[0, 0, 1]]).unwrap();
        let pa = sq.pseudo_area().embed();
        assert!(pa.re.abs() < 1e-12 && (pa.im - 4.0).abs() < 1e-12);
        assert!((sq.area() - 1.0).abs() < 1e-12);
        assert!(sq.is_convex());
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = Polygon::from_ints(8, &[&[0], &[0, 0, 1], &[1, 0, 1], &[1]]).unwrap();
        assert!(cw.area() > 0.0);
        assert_eq!(cw.vertices()[0], CycNum::from_int(8, 1));
    }

    #[test]
    fn degenerate_and_bowtie_rejected() {
        assert!(Polygon::from_ints(8, &[&[0], &[1], &[1]]).is_err());
        assert!(Polygon::from_ints(8, &[&[0], &[1]]).is_err());
        let bowtie = Polygon::from_ints(8, &[&[0], &[2, 0, 2], &[2], &[0, 0, 2]]);
        assert!(bowtie.is_err());
    }

    #[test]
    fn penrose_area_ratio_is_tau() {
        // (0, -1, -xi^4) and (0, tau, -xi^3) have equal areas
        let s = Polygon::from_ints(5, &[&[0], &[-1], &[0, 0, 0, 0, -1]]).unwrap();
        let l = Polygon::from_ints(5, &[&[0], &[1, 1, 0, 0, 1], &[0, 0, 0, -1]]).unwrap();
        assert_eq!(l.pseudo_area(), s.pseudo_area());
        // scaled by tau about the apex the ratio becomes tau
        let s = Polygon::from_ints(5, &[&[0], &[-1], &[-1, 0, 0, -1, -1]]).unwrap();
        let l = Polygon::from_ints(5, &[&[0], &[2, 1, 0, 0, 1], &[0, 0, -1, -1, -1]]).unwrap();
        let ratio = l.pseudo_area().try_div(&s.pseudo_area()).unwrap();
        assert_eq!(ratio, CycNum::from_ints(5, &[1, 1, 0, 0, 1]));
        assert!((l.area() / s.area() - 1.618_033_988_75).abs() < 1e-9);
    }

    #[test]
    fn pseudo_area_translation_and_scaling() {
        let p = Polygon::from_ints(8, &[&[0], &[2, 1], &[0, 1, 1], &[-1, 0, 0, 1]]).unwrap();
        let c = CycNum::from_ints(8, &[3, -1, 2, 7]);
        assert_eq!(p.translate(&c).pseudo_area(), p.pseudo_area());
        let u = CycNum::from_ints(8, &[1, 2, 0, -1]);
        let f = AffineSimilarity::linear(u.clone()).unwrap();
        assert_eq!(p.transform(&f).pseudo_area(), &u.norm_sq() * &p.pseudo_area());
        let g = AffineSimilarity::new(u.clone(), true, c).unwrap();
        assert_eq!(p.transform(&g).pseudo_area(), &u.norm_sq() * &p.pseudo_area());
    }
}
