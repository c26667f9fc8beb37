use super::{cross, Polygon};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::substitution::{AffineSimilarity, SubstitutionSystem};
use num::complex::Complex64;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Area,
    Disjoint,
    Containment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// How a check was decided: exactly, or numerically with a signed margin
/// (positive means room to spare).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Margin {
    Exact,
    Value(f64),
}

impl Serialize for Margin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Margin::Exact => s.serialize_str("exact"),
            Margin::Value(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub component: String,
    pub check: Check,
    pub status: Status,
    pub margin: Margin,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    fn push(&mut self, component: &str, check: Check, ok: bool, margin: Margin, details: Vec<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(CheckResult { component: component.to_string(), check, status, margin, details });
    }
}

// ---- intervals ----

/// Exact check that the intervals solve a one-dimensional system: in every
/// column the child images must abut without gaps or overlaps and fill the
/// parent interval.
pub fn verify_interval_solution(s: &SubstitutionSystem, intervals: &[(CycNum, CycNum)]) -> Result<Report> {
    if s.dimension() != 1 {
        return Err(Error::input("interval verification needs a one-dimensional system"));
    }
    if intervals.len() != s.size() {
        return Err(Error::input(format!("expected {} intervals, got {}", s.size(), intervals.len())));
    }
    for (k, (l, r)) in intervals.iter().enumerate() {
        if !l.is_real() || !r.is_real() || l.order() != s.order() || r.order() != s.order() {
            return Err(Error::input(format!("interval {k} has non-real or mismatched endpoints")));
        }
        if l.embed().re >= r.embed().re {
            return Err(Error::input(format!("interval {k} is empty or reversed: [{l}, {r}]")));
        }
    }
    let mut report = Report::default();
    for j in 0..s.size() {
        let name = &s.prototiles()[j];
        let mut pieces: Vec<(CycNum, CycNum)> = (0..s.size())
            .flat_map(|i| s.entry(i, j).iter().map(move |f| (i, f)))
            .map(|(i, f)| {
                let (a, b) = (f.apply(&intervals[i].0), f.apply(&intervals[i].1));
                if a.embed().re <= b.embed().re {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        pieces.sort_by(|a, b| a.0.embed().re.total_cmp(&b.0.embed().re));
        let mut overlaps = Vec::new();
        let mut gaps = Vec::new();
        for w in pieces.windows(2) {
            if w[0].1 != w[1].0 {
                let msg = format!("[{}, {}] then [{}, {}]", w[0].0, w[0].1, w[1].0, w[1].1);
                if w[0].1.embed().re > w[1].0.embed().re {
                    overlaps.push(format!("overlap: {msg}"));
                } else {
                    gaps.push(format!("gap: {msg}"));
                }
            }
        }
        let (lo, hi) = (&pieces[0].0, &pieces.last().unwrap().1);
        if *lo != intervals[j].0 {
            let kind = if lo.embed().re < intervals[j].0.embed().re { "overlap past start" } else { "gap at start" };
            gaps.push(format!("{kind}: union starts at {lo}, interval at {}", intervals[j].0));
        }
        if *hi != intervals[j].1 {
            let kind = if hi.embed().re > intervals[j].1.embed().re { "overlap past end" } else { "gap at end" };
            gaps.push(format!("{kind}: union ends at {hi}, interval at {}", intervals[j].1));
        }
        report.push(name, Check::Disjoint, overlaps.is_empty(), Margin::Exact, overlaps);
        report.push(name, Check::Containment, gaps.is_empty(), Margin::Exact, gaps);
    }
    Ok(report)
}

// ---- polygons ----

/// Signed distance of `z` inside the convex CCW polygon `p` (negative outside).
fn inside_margin(p: &[Complex64], z: Complex64) -> f64 {
    let n = p.len();
    (0..n)
        .map(|k| {
            let e = p[(k + 1) % n] - p[k];
            cross(e, z - p[k]) / e.norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest separation along an edge normal of either convex polygon;
/// negative values measure penetration depth.
fn separation(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for (p, q) in [(a, b), (b, a)] {
        let n = p.len();
        for k in 0..n {
            let e = p[(k + 1) % n] - p[k];
            let normal = Complex64::new(e.im, -e.re) / e.norm(); // outward for CCW
            let proj = |z: &Complex64| (z - p[k]).re * normal.re + (z - p[k]).im * normal.im;
            let min_q = q.iter().map(proj).fold(f64::INFINITY, f64::min);
            best = best.max(min_q);
        }
    }
    best
}

fn require_convex(polys: &[&Polygon]) -> Result<()> {
    if polys.iter().any(|p| !p.is_convex()) {
        return Err(Error::InvalidPolygon("numeric checks need convex polygons".into()));
    }
    Ok(())
}

/// Children `(scale, prototile, image)` of one parent: area identity,
/// pairwise disjointness, containment.
fn tile_checks(report: &mut Report, name: &str, parent: &Polygon, children: &[(CycNum, &Polygon, Polygon)], tol: f64) {
    let mut total = CycNum::zero(parent.order());
    for (u, proto, _) in children {
        total = &total + &(&u.norm_sq() * &proto.pseudo_area());
    }
    let lhs = parent.pseudo_area();
    let area_ok = total == lhs;
    let details = if area_ok { vec![] } else { vec![format!("parent {lhs} vs children {total}")] };
    report.push(name, Check::Area, area_ok, Margin::Exact, details);

    let imgs: Vec<Vec<Complex64>> = children.iter().map(|(_, _, c)| c.embedded()).collect();
    let mut disjoint = f64::INFINITY;
    let mut worst = None;
    for a in 0..imgs.len() {
        for b in a + 1..imgs.len() {
            let sep = separation(&imgs[a], &imgs[b]);
            if sep < disjoint {
                disjoint = sep;
                worst = Some((a, b));
            }
        }
    }
    // touching pieces have separation 0; report the penetration margin
    let margin = if disjoint.is_finite() { disjoint.min(0.0) + tol } else { tol };
    let details = match worst {
        Some((a, b)) if disjoint < -tol => vec![format!("pieces {a} and {b} overlap by {:.3e}", -disjoint)],
        _ => vec![],
    };
    report.push(name, Check::Disjoint, disjoint >= -tol, Margin::Value(margin), details);

    let pe = parent.embedded();
    let mut contain = f64::INFINITY;
    let mut details = vec![];
    for (k, img) in imgs.iter().enumerate() {
        let m = img.iter().map(|&z| inside_margin(&pe, z)).fold(f64::INFINITY, f64::min);
        if m < -tol {
            details.push(format!("piece {k} sticks out by {m:.3e}"));
        }
        contain = contain.min(m);
    }
    report.push(name, Check::Containment, contain >= -tol, Margin::Value(contain + tol), details);
}

/// Checks that the polygons solve the system: for each component `j`,
/// `pa(P_j) = sum |u_f|^2 pa(P_i)` exactly over the maps of column `j`, and
/// the images `f(P_i)` are pairwise interior-disjoint and inside `P_j`
/// within `tol`.
pub fn verify_polygon_solution(s: &SubstitutionSystem, polygons: &[Polygon], tol: f64) -> Result<Report> {
    if polygons.len() != s.size() {
        return Err(Error::input(format!("expected {} polygons, got {}", s.size(), polygons.len())));
    }
    if let Some(p) = polygons.iter().find(|p| p.order() != s.order()) {
        return Err(Error::OrderMismatch(s.order(), p.order()));
    }
    require_convex(&polygons.iter().collect::<Vec<_>>())?;
    let mut report = Report::default();
    for j in 0..s.size() {
        let children: Vec<(CycNum, &Polygon, Polygon)> = (0..s.size())
            .flat_map(|i| s.entry(i, j).iter().map(move |f| (i, f)))
            .map(|(i, f)| (f.scale().clone(), &polygons[i], polygons[i].transform(f)))
            .collect();
        tile_checks(&mut report, &s.prototiles()[j], &polygons[j], &children, tol);
    }
    Ok(report)
}

/// Checks a dissection of `parent` into similar copies `g(piece)`.
pub fn subdivision_check(parent: &Polygon, pieces: &[(AffineSimilarity, Polygon)], tol: f64) -> Result<Report> {
    if pieces.is_empty() {
        return Err(Error::input("empty piece list"));
    }
    let mut all: Vec<&Polygon> = pieces.iter().map(|(_, p)| p).collect();
    all.push(parent);
    require_convex(&all)?;
    let children: Vec<(CycNum, &Polygon, Polygon)> =
        pieces.iter().map(|(g, p)| (g.scale().clone(), p, p.transform(g))).collect();
    let mut report = Report::default();
    tile_checks(&mut report, "parent", parent, &children, tol);
    Ok(report)
}

/// A similarity `g` with `g(src) = dst` as vertex cycles, orientation
/// preserving ones first.
pub fn similarity_onto(src: &Polygon, dst: &Polygon) -> Option<AffineSimilarity> {
    let (a, b) = (src.vertices(), dst.vertices());
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    for conj in [false, true] {
        for shift in 0..n {
            // a conjugating map reverses orientation, so walk dst backwards
            let target = |k: usize| {
                if conj {
                    &b[(shift + n - k) % n]
                } else {
                    &b[(shift + k) % n]
                }
            };
            let src_edge = &a[1] - &a[0];
            let src_edge = if conj { src_edge.complex_conj() } else { src_edge };
            let u = (target(1) - target(0)).try_div(&src_edge).ok()?;
            let a0 = if conj { a[0].complex_conj() } else { a[0].clone() };
            let d = target(0) - &(&u * &a0);
            let g = AffineSimilarity::new(u, conj, d).ok()?;
            if (0..n).all(|k| g.apply(&a[k]) == *target(k)) {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;

    fn tau() -> CycNum {
        CycNum::from_ints(5, &[1, 1, 0, 0, 1])
    }

    fn fib2() -> SubstitutionSystem {
        let c = |v: i64| CycNum::from_int(5, v);
        let digits = vec![vec![vec![c(0), c(1)], vec![c(0)]], vec![vec![c(2)], vec![c(1)]]];
        SubstitutionSystem::from_digits("fib2", 5, 1, vec!["a".into(), "b".into()], &tau() * &tau(), &digits)
            .unwrap()
    }

    #[test]
    fn fibonacci_squared_intervals() {
        let s = fib2();
        let z = CycNum::zero(5);
        let ok = [(z.clone(), CycNum::one(5)), (z.clone(), tau().inverse().unwrap())];
        assert!(verify_interval_solution(&s, &ok).unwrap().passed());
        let bad = [(z.clone(), CycNum::one(5)), (z.clone(), CycNum::one(5))];
        let r = verify_interval_solution(&s, &bad).unwrap();
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.details.iter().any(|d| d.starts_with("overlap past end"))));
        assert!(verify_interval_solution(&s, &[(CycNum::one(5), z.clone()), (z.clone(), CycNum::one(5))]).is_err());
    }

    #[test]
    fn report_json_shape() {
        let s = fib2();
        let z = CycNum::zero(5);
        let r = verify_interval_solution(&s, &[(z.clone(), CycNum::one(5)), (z, tau().inverse().unwrap())]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v[0]["component"], "a");
        assert_eq!(v[0]["check"], "disjoint");
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["margin"], "exact");
    }

    #[test]
    fn similarity_onto_finds_mirror_maps() {
        let n = 8;
        let tri = Polygon::from_ints(n, &[&[0], &[2], &[0, 1]]).unwrap();
        let g = AffineSimilarity::new(CycNum::from_ints(n, &[0, 0, 3]), true, CycNum::from_ints(n, &[1, 1])).unwrap();
        let img = tri.transform(&g);
        let found = similarity_onto(&tri, &img).unwrap();
        assert_eq!(found, g);
        let sq = Polygon::from_ints(n, &[&[0], &[1], &[1, 0, 1], &[0, 0, 1]]).unwrap();
        assert!(similarity_onto(&tri, &sq).is_none());
    }

    #[test]
    fn subdivision_of_square_into_triangles() {
        let n = 8;
        let i = &[0, 0, 1][..];
        let sq = Polygon::from_ints(n, &[&[0], &[1], &[1, 0, 1], i]).unwrap();
        let half = Polygon::from_ints(n, &[&[0], &[1], &[1, 0, 1]]).unwrap();
        let other = Polygon::from_ints(n, &[&[0], &[1, 0, 1], i]).unwrap();
        let g = similarity_onto(&half, &other).unwrap();
        let pieces = vec![(AffineSimilarity::identity(n), half.clone()), (g, half.clone())];
        assert!(subdivision_check(&sq, &pieces, 1e-9).unwrap().passed());
        let r = subdivision_check(&sq, &pieces[..1], 1e-9).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().check, Check::Area);
        let twice = vec![pieces[0].clone(), pieces[0].clone()];
        let r = subdivision_check(&sq, &twice, 1e-9).unwrap();
        assert!(r.failures().any(|c| c.check == Check::Disjoint));
        assert!(subdivision_check(&sq, &[], 1e-9).is_err());
    }
}
