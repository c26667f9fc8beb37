use crate::error::{Error, Result};
use crate::substitution::SubstitutionSystem;
use num::complex::Complex64;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub component: usize,
}

impl PointCloud {
    pub fn new(points: Vec<Complex64>, component: usize) -> Self {
        PointCloud { points, component }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn translated(&self, t: Complex64) -> PointCloud {
        PointCloud { points: self.points.iter().map(|z| z + t).collect(), component: self.component }
    }

    pub fn centroid(&self) -> Complex64 {
        self.points.iter().sum::<Complex64>() / self.points.len() as f64
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounds(&self) -> (Complex64, Complex64) {
        let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        for z in &self.points {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        (lo, hi)
    }
}

struct CompiledMap {
    child: usize,
    parent: usize,
    u: Complex64,
    d: Complex64,
    conj: bool,
}

fn cell_key(z: Complex64, h: f64) -> (i64, i64) {
    ((z.re / h).floor() as i64, (z.im / h).floor() as i64)
}

fn canonicalize(points: &mut Vec<Complex64>, thin: Option<f64>) {
    points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    if let Some(h) = thin {
        let mut seen = std::collections::HashSet::new();
        points.retain(|z| seen.insert(cell_key(*z, h)));
    }
}

fn run(s: &SubstitutionSystem, depth: usize, thin: Option<f64>) -> Result<Vec<Vec<Complex64>>> {
    if depth < 1 {
        return Err(Error::input("depth must be at least 1"));
    }
    if s.contraction_ratio() >= 1.0 {
        return Err(Error::system("attractor requires contracting maps"));
    }
    let m = s.size();
    let maps: Vec<CompiledMap> = s
        .maps()
        .map(|(i, j, f)| CompiledMap { child: i, parent: j, u: f.scale().embed(), d: f.translate().embed(), conj: f.conjugate() })
        .collect();
    // start from a point of each component: a fixed point of a map from the
    // component into itself when one exists
    let mut level: Vec<Vec<Complex64>> = (0..m)
        .map(|j| {
            s.maps()
                .find(|&(i, p, _)| i == j && p == j)
                .map(|(_, _, f)| f.fixed_point_complex())
                .unwrap_or_default()
        })
        .map(|z| vec![z])
        .collect();
    for _ in 0..depth {
        let mut next = vec![Vec::new(); m];
        for f in &maps {
            let src = &level[f.child];
            let dst = &mut next[f.parent];
            dst.reserve(src.len());
            for &z in src {
                let z = if f.conj { z.conj() } else { z };
                dst.push(f.u * z + f.d);
            }
        }
        for pts in next.iter_mut() {
            canonicalize(pts, thin);
        }
        level = next;
    }
    Ok(level)
}

/// All images of the start points under compositions of `depth` maps that
/// land in `component`. The result is within `C r^depth` of the attractor.
pub fn attractor_cloud(s: &SubstitutionSystem, depth: usize, component: usize) -> Result<PointCloud> {
    check_component(s, component)?;
    let mut all = run(s, depth, None)?;
    Ok(PointCloud::new(std::mem::take(&mut all[component]), component))
}

/// Same enumeration, keeping one point per grid cell of side `resolution`
/// after every step. The extra error is at most `resolution * sqrt 2 / (1 - r)`.
pub fn attractor_cloud_thinned(
    s: &SubstitutionSystem,
    depth: usize,
    component: usize,
    resolution: f64,
) -> Result<PointCloud> {
    check_component(s, component)?;
    if !(resolution > 0.0) {
        return Err(Error::input("resolution must be positive"));
    }
    let mut all = run(s, depth, Some(resolution))?;
    Ok(PointCloud::new(std::mem::take(&mut all[component]), component))
}

fn check_component(s: &SubstitutionSystem, component: usize) -> Result<()> {
    if component >= s.size() {
        return Err(Error::input(format!("component {component} out of range (system has {})", s.size())));
    }
    Ok(())
}

/// Uniform-grid index for exact nearest-neighbour distances.
struct GridIndex<'a> {
    points: &'a [Complex64],
    h: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
    lo: (i64, i64),
    hi: (i64, i64),
}

impl<'a> GridIndex<'a> {
    fn new(points: &'a [Complex64]) -> Self {
        let cloud = PointCloud::new(points.to_vec(), 0);
        let (lo, hi) = cloud.bounds();
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
        let h = span / (points.len() as f64).sqrt().max(1.0);
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (k, z) in points.iter().enumerate() {
            cells.entry(cell_key(*z, h)).or_default().push(k);
        }
        let (lo, hi) = (cell_key(lo, h), cell_key(hi, h));
        GridIndex { points, h, cells, lo, hi }
    }

    fn nearest(&self, z: Complex64) -> f64 {
        self.nearest_capped(z, f64::INFINITY)
    }

    /// Nearest distance, except that once it is known to exceed `cap` some
    /// value above `cap` may be returned instead.
    fn nearest_capped(&self, z: Complex64, cap: f64) -> f64 {
        let (cx, cy) = cell_key(z, self.h);
        let mut best = f64::INFINITY;
        let reach = [cx - self.lo.0, self.hi.0 - cx, cy - self.lo.1, self.hi.1 - cy]
            .into_iter()
            .fold(0, |a, b| a.max(b.abs()));
        // rings that lie wholly outside the bounding box hold no points
        let gap_x = (self.lo.0 - cx).max(cx - self.hi.0).max(0);
        let gap_y = (self.lo.1 - cy).max(cy - self.hi.1).max(0);
        let mut ring = gap_x.max(gap_y);
        if ring.saturating_mul(ring) > self.points.len() as i64 + 16 {
            return self.sweep(z);
        }
        loop {
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                        for &k in ids {
                            best = best.min((self.points[k] - z).norm());
                        }
                    }
                }
            }
            // every unvisited cell is at least ring * h away
            let floor = ring as f64 * self.h;
            if best <= floor || ring >= reach {
                return best;
            }
            if floor > cap {
                return floor;
            }
            // far from the data: scanning more rings costs more than a sweep
            if ring * ring > self.points.len() as i64 + 16 {
                return self.sweep(z);
            }
            ring += 1;
        }
    }

    fn sweep(&self, z: Complex64) -> f64 {
        self.points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
    }
}

fn directed(a: &[Complex64], b: &GridIndex<'_>) -> f64 {
    a.iter().map(|&z| b.nearest(z)).fold(0.0, f64::max)
}

/// Directed distance, or some value above `cap` once it exceeds `cap`.
fn directed_capped(a: &[Complex64], b: &GridIndex<'_>, cap: f64) -> f64 {
    let mut worst = 0.0f64;
    for &z in a {
        worst = worst.max(b.nearest_capped(z, cap));
        if worst > cap {
            break;
        }
    }
    worst
}

/// Symmetric Hausdorff distance of two finite point sets.
pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("hausdorff distance of an empty cloud"));
    }
    let ia = GridIndex::new(&a.points);
    let ib = GridIndex::new(&b.points);
    Ok(directed(&a.points, &ib).max(directed(&b.points, &ia)))
}

/// `z -> rotation * z + translation`, or with `conj(z)` when `reflect`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub rotation: Complex64,
    pub reflect: bool,
    pub translation: Complex64,
}

impl Isometry {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let z = if self.reflect { z.conj() } else { z };
        self.rotation * z + self.translation
    }
}

/// Best isometry among the `2 * rotations` dihedral symmetries (about the
/// centroids) carrying `a` onto `b`, with its Hausdorff distance.
pub fn match_isometry(a: &PointCloud, b: &PointCloud, rotations: u32) -> Result<(Isometry, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("isometry match on an empty cloud"));
    }
    let (ca, cb) = (a.centroid(), b.centroid());
    let ib = GridIndex::new(&b.points);
    let stride = (a.len() / 256).max(1);
    let mut candidates = Vec::new();
    for reflect in [false, true] {
        for r in 0..rotations {
            let rotation = Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / rotations as f64);
            let ca_img = if reflect { ca.conj() } else { ca };
            let iso = Isometry { rotation, reflect, translation: cb - rotation * ca_img };
            // a sample's one-sided distance is a lower bound for the full one
            let sample: Vec<Complex64> = a.points.iter().step_by(stride).map(|&z| iso.apply(z)).collect();
            candidates.push((directed(&sample, &ib), iso));
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut best: Option<(Isometry, f64)> = None;
    for (screen, iso) in candidates {
        let cap = best.as_ref().map_or(f64::INFINITY, |(_, d)| *d);
        if screen >= cap {
            continue;
        }
        let moved: Vec<Complex64> = a.points.iter().map(|&z| iso.apply(z)).collect();
        let there = directed_capped(&moved, &ib, cap);
        if there >= cap {
            continue;
        }
        let back = directed_capped(&b.points, &GridIndex::new(&moved), cap);
        let d = there.max(back);
        if d < cap {
            best = Some((iso, d));
        }
    }
    Ok(best.expect("at least one candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::substitution::{AffineSimilarity, SubstitutionSystem};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hausdorff_basics() {
        let a = PointCloud::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 2.0)], 0);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        let p = PointCloud::new(vec![c(0.0, 0.0)], 0);
        let q = PointCloud::new(vec![c(3.0, 0.0)], 0);
        assert_eq!(hausdorff(&p, &q).unwrap(), 3.0);
        let t = c(0.3, -0.4);
        assert!((hausdorff(&a, &a.translated(t)).unwrap() - 0.5).abs() < 1e-12);
        assert!(hausdorff(&a, &PointCloud::new(vec![], 0)).is_err());
    }

    #[test]
    fn hausdorff_matches_brute_force() {
        let mut x = 0.123_f64;
        let mut next = || {
            x = (x * 3.7 + 0.31).fract();
            x
        };
        let a: Vec<Complex64> = (0..300).map(|_| c(next() * 5.0, next())).collect();
        let b: Vec<Complex64> = (0..200).map(|_| c(next(), next() * 3.0)).collect();
        let brute = |p: &[Complex64], q: &[Complex64]| {
            p.iter().map(|z| q.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        };
        let exact = brute(&a, &b).max(brute(&b, &a));
        let fast = hausdorff(&PointCloud::new(a, 0), &PointCloud::new(b, 0)).unwrap();
        assert!((exact - fast).abs() < 1e-12);
    }

    #[test]
    fn single_map_cloud_is_the_fixed_point() {
        let half = AffineSimilarity::linear(CycNum::from_ratio(5, 1, 2)).unwrap();
        let s = SubstitutionSystem::new("half", 5, 1, vec!["a".into()], CycNum::from_int(5, 2), vec![vec![vec![half]]])
            .unwrap();
        for depth in [1, 5, 20] {
            assert_eq!(attractor_cloud(&s, depth, 0).unwrap().points, vec![c(0.0, 0.0)]);
        }
    }

    #[test]
    fn isometry_recovers_reflection() {
        let a = PointCloud::new(vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 1.0), c(0.3, 0.2)], 0);
        let b = PointCloud::new(a.points.iter().map(|z| z.conj() * c(0.0, 1.0) + c(5.0, 1.0)).collect(), 0);
        let (iso, d) = match_isometry(&a, &b, 8).unwrap();
        assert!(d < 1e-12);
        assert!(iso.reflect);
    }
}
