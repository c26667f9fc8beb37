//! Tile-substitutions as matrix function systems over `Q(xi_n)`.
//!
//! A [`SubstitutionSystem`] stores, for every pair (child `i`, parent `j`), the
//! finite set of similarities placing prototile `i` inside prototile `j`:
//! `T_j = U_i U_{f in entries[i][j]} f(T_i)`. In pure-translation form every
//! map is `x -> lambda^-1 (x + d)` and the `d` make up the digit matrix.

mod automaton;
mod matrix;
mod patch;
mod realization;
mod word;

pub use automaton::export_automaton;
pub use matrix::{is_primitive, pf_data, transpose, Incidence, IntMatrix, PfData};
pub use patch::{iterate, Patch, PlacedTile};
pub use realization::geometric_realization;
pub use word::{parse_word_substitution, WordSubstitution};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use num::complex::Complex64;
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// `x -> scale * x + translate`, or `x -> scale * conj(x) + translate` when
/// `conjugate` is set.
///
/// `label` is presentation metadata only; equality, ordering and hashing look
/// at `(scale, conjugate, translate)`.
#[derive(Clone, Debug)]
pub struct AffineSimilarity {
    scale: CycNum,
    conjugate: bool,
    translate: CycNum,
    label: Option<String>,
}

impl AffineSimilarity {
    pub fn new(scale: CycNum, conjugate: bool, translate: CycNum) -> Result<Self> {
        if scale.order() != translate.order() {
            return Err(Error::OrderMismatch(scale.order(), translate.order()));
        }
        if scale.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AffineSimilarity { scale, conjugate, translate, label: None })
    }

    pub fn identity(order: u32) -> Self {
        AffineSimilarity::new(CycNum::one(order), false, CycNum::zero(order)).unwrap()
    }

    pub fn translation(d: CycNum) -> Self {
        AffineSimilarity::new(CycNum::one(d.order()), false, d).unwrap()
    }

    /// `x -> u * x`.
    pub fn linear(u: CycNum) -> Result<Self> {
        let z = CycNum::zero(u.order());
        AffineSimilarity::new(u, false, z)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn without_label(mut self) -> Self {
        self.label = None;
        self
    }

    pub fn scale(&self) -> &CycNum {
        &self.scale
    }

    pub fn conjugate(&self) -> bool {
        self.conjugate
    }

    pub fn translate(&self) -> &CycNum {
        &self.translate
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> u32 {
        self.scale.order()
    }

    pub fn apply(&self, x: &CycNum) -> CycNum {
        let x = if self.conjugate { x.complex_conj() } else { x.clone() };
        &(&self.scale * &x) + &self.translate
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        self.apply_complex_with(self.scale.embed(), self.translate.embed(), z)
    }

    #[inline]
    pub(crate) fn apply_complex_with(&self, u: Complex64, d: Complex64, z: Complex64) -> Complex64 {
        let z = if self.conjugate { z.conj() } else { z };
        u * z + d
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineSimilarity) -> AffineSimilarity {
        let (s, d) = if self.conjugate {
            (inner.scale.complex_conj(), inner.translate.complex_conj())
        } else {
            (inner.scale.clone(), inner.translate.clone())
        };
        AffineSimilarity {
            scale: &self.scale * &s,
            conjugate: self.conjugate ^ inner.conjugate,
            translate: &(&self.scale * &d) + &self.translate,
            label: None,
        }
    }

    /// Exact inverse map.
    pub fn inverse(&self) -> AffineSimilarity {
        let uinv = self.scale.inverse().expect("scale is nonzero");
        let shift = -(&uinv * &self.translate);
        let (scale, translate) =
            if self.conjugate { (uinv.complex_conj(), shift.complex_conj()) } else { (uinv, shift) };
        AffineSimilarity { scale, conjugate: self.conjugate, translate, label: self.label.clone() }
    }

    /// Applies `xi -> xi^k` to both parameters; the conjugation flag is kept.
    pub fn galois(&self, k: i64) -> Result<AffineSimilarity> {
        Ok(AffineSimilarity {
            scale: self.scale.galois(k)?,
            conjugate: self.conjugate,
            translate: self.translate.galois(k)?,
            label: self.label.clone(),
        })
    }

    /// `|scale|` under the embedding.
    pub fn ratio(&self) -> f64 {
        self.scale.abs()
    }

    pub fn is_contracting(&self) -> bool {
        self.ratio() < 1.0
    }

    /// Fixed point of the map, evaluated numerically.
    pub fn fixed_point_complex(&self) -> Complex64 {
        let u = self.scale.embed();
        let d = self.translate.embed();
        if !self.conjugate {
            return d / (Complex64::new(1.0, 0.0) - u);
        }
        // z = u conj(z) + d  =>  z = u (conj(u) z + conj(d)) + d
        let uu = u * u.conj();
        (u * d.conj() + d) / (Complex64::new(1.0, 0.0) - uu)
    }

    fn key(&self) -> (&CycNum, bool, &CycNum) {
        (&self.translate, self.conjugate, &self.scale)
    }
}

impl PartialEq for AffineSimilarity {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for AffineSimilarity {}

impl Hash for AffineSimilarity {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for AffineSimilarity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineSimilarity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::fmt::Display for AffineSimilarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let x = if self.conjugate { "conj(x)" } else { "x" };
        write!(f, "x -> ({}) {x} + ({})", self.scale, self.translate)
    }
}

/// Entries of one substitution: `entries[i][j]` places child `i` in parent `j`.
pub type MapMatrix = Vec<Vec<Vec<AffineSimilarity>>>;

/// Digit sets `D_ij` for pure-translation systems.
pub type DigitMatrix = Vec<Vec<Vec<CycNum>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSystem {
    name: String,
    order: u32,
    dimension: u8,
    prototiles: Vec<String>,
    expansion: CycNum,
    entries: MapMatrix,
}

impl SubstitutionSystem {
    /// Validates and canonicalizes a system. Each entry is sorted by digit
    /// (`expansion * translate`, coefficient-lexicographic), then conjugation
    /// flag, then scale.
    pub fn new(
        name: impl Into<String>,
        order: u32,
        dimension: u8,
        prototiles: Vec<String>,
        expansion: CycNum,
        mut entries: MapMatrix,
    ) -> Result<Self> {
        let m = prototiles.len();
        if m == 0 {
            return Err(Error::system("no prototiles"));
        }
        if !(1..=2).contains(&dimension) {
            return Err(Error::system(format!("dimension must be 1 or 2, got {dimension}")));
        }
        if expansion.order() != order {
            return Err(Error::OrderMismatch(order, expansion.order()));
        }
        if expansion.abs() <= 1.0 {
            return Err(Error::system(format!("expansion {expansion} is not expanding")));
        }
        if dimension == 1 && !expansion.is_real() {
            return Err(Error::system("one-dimensional system with non-real expansion"));
        }
        if entries.len() != m || entries.iter().any(|row| row.len() != m) {
            return Err(Error::system(format!("entries must be a {m}x{m} matrix")));
        }
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, set) in row.iter_mut().enumerate() {
                for f in set.iter() {
                    if f.order() != order {
                        return Err(Error::OrderMismatch(order, f.order()));
                    }
                    if !f.is_contracting() {
                        return Err(Error::system(format!("map {f} in entry ({i},{j}) is not contracting")));
                    }
                    if dimension == 1 && !(f.scale.is_real() && f.translate.is_real() && !f.conjugate) {
                        return Err(Error::system(format!("map {f} in entry ({i},{j}) is not real")));
                    }
                }
                let mut keyed: Vec<(CycNum, AffineSimilarity)> =
                    set.drain(..).map(|f| (&expansion * &f.translate, f)).collect();
                keyed.sort_by(|a, b| (&a.0, a.1.conjugate, &a.1.scale).cmp(&(&b.0, b.1.conjugate, &b.1.scale)));
                if keyed.windows(2).any(|w| w[0].1 == w[1].1) {
                    return Err(Error::system(format!("duplicate map in entry ({i},{j})")));
                }
                *set = keyed.into_iter().map(|(_, f)| f).collect();
            }
        }
        Ok(SubstitutionSystem { name: name.into(), order, dimension, prototiles, expansion, entries })
    }

    /// Builds the pure-translation system with maps `x -> expansion^-1 (x + d)`.
    pub fn from_digits(
        name: impl Into<String>,
        order: u32,
        dimension: u8,
        prototiles: Vec<String>,
        expansion: CycNum,
        digits: &DigitMatrix,
    ) -> Result<Self> {
        let inv = expansion.inverse()?;
        let entries = digits
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| {
                        set.iter()
                            .map(|d| AffineSimilarity::new(inv.clone(), false, &inv * d))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SubstitutionSystem::new(name, order, dimension, prototiles, expansion, entries)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn prototiles(&self) -> &[String] {
        &self.prototiles
    }

    pub fn with_prototiles(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.prototiles.len());
        self.prototiles = names;
        self
    }

    pub fn size(&self) -> usize {
        self.prototiles.len()
    }

    pub fn expansion(&self) -> &CycNum {
        &self.expansion
    }

    pub fn entries(&self) -> &MapMatrix {
        &self.entries
    }

    pub fn entry(&self, child: usize, parent: usize) -> &[AffineSimilarity] {
        &self.entries[child][parent]
    }

    /// All maps as `(child, parent, map)`, parent-major.
    pub fn maps(&self) -> impl Iterator<Item = (usize, usize, &AffineSimilarity)> {
        let m = self.size();
        (0..m).flat_map(move |j| (0..m).flat_map(move |i| self.entries[i][j].iter().map(move |f| (i, j, f))))
    }

    pub fn map_count(&self) -> usize {
        self.maps().count()
    }

    /// Largest contraction ratio among all maps.
    pub fn contraction_ratio(&self) -> f64 {
        self.maps().map(|(_, _, f)| f.ratio()).fold(0.0, f64::max)
    }

    /// True when every map is `x -> expansion^-1 (x + d)`.
    pub fn is_pure_translation(&self) -> bool {
        let inv = self.expansion.inverse().unwrap();
        self.maps().all(|(_, _, f)| !f.conjugate && f.scale == inv)
    }

    /// The digit sets `D_ij` of a pure-translation system.
    pub fn digit_matrix(&self) -> Result<DigitMatrix> {
        if !self.is_pure_translation() {
            return Err(Error::NotPureTranslation);
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().map(|set| set.iter().map(|f| &self.expansion * &f.translate).collect()).collect())
            .collect())
    }

    /// Digit of a map: the translation part of `expansion ∘ f`.
    pub fn digit_of(&self, f: &AffineSimilarity) -> CycNum {
        &self.expansion * &f.translate
    }

    /// Digit sets shifted to `D_ij + (lambda t_j - t_i)`; component `i` of
    /// the attractor moves by `t_i`. (With contracted digits `lambda^-1 d`
    /// the shift reads `t_j - lambda^-1 t_i`.)
    pub fn translate_digits(&self, t: &[CycNum]) -> Result<SubstitutionSystem> {
        let digits = self.digit_matrix()?;
        if t.len() != self.size() {
            return Err(Error::input(format!("expected {} translations, got {}", self.size(), t.len())));
        }
        let shifted = digits
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, set)| {
                        let delta = &(&self.expansion * &t[j]) - &t[i];
                        set.iter().map(|d| d + &delta).collect()
                    })
                    .collect()
            })
            .collect();
        self.rebuild_from_digits(&shifted)
    }

    /// Digits mapped through `x -> g x` (or `x -> g conj(x)`); the attractor
    /// components are mapped the same way.
    pub fn transform_digits(&self, g: &CycNum, conj: bool) -> Result<SubstitutionSystem> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if conj && !self.expansion.is_real() {
            return Err(Error::input("conjugating transform requires a real expansion"));
        }
        let digits = self.digit_matrix()?;
        let image = |d: &CycNum| if conj { g * &d.complex_conj() } else { g * d };
        let mapped: DigitMatrix =
            digits.iter().map(|row| row.iter().map(|set| set.iter().map(image).collect()).collect()).collect();
        self.rebuild_from_digits(&mapped)
    }

    /// The `r`-fold iterate: expansion `lambda^r`, maps `g_1 ∘ ... ∘ g_r`
    /// along every path of length `r`. It defines the same tiling space.
    pub fn power(&self, r: u32) -> Result<SubstitutionSystem> {
        if r == 0 {
            return Err(Error::input("power must be at least 1"));
        }
        let m = self.size();
        let mut entries = self.entries.clone();
        for _ in 1..r {
            let mut next: MapMatrix = vec![vec![Vec::new(); m]; m];
            for (i, row) in next.iter_mut().enumerate() {
                for (j, set) in row.iter_mut().enumerate() {
                    for k in 0..m {
                        for inner in &entries[i][k] {
                            for outer in &self.entries[k][j] {
                                set.push(outer.compose(inner));
                            }
                        }
                    }
                }
            }
            entries = next;
        }
        let name = if r == 1 { self.name.clone() } else { format!("{}^{r}", self.name) };
        let expansion = self.expansion.pow(r as i64)?;
        SubstitutionSystem::new(name, self.order, self.dimension, self.prototiles.clone(), expansion, entries)
    }

    fn rebuild_from_digits(&self, digits: &DigitMatrix) -> Result<SubstitutionSystem> {
        SubstitutionSystem::from_digits(
            self.name.clone(),
            self.order,
            self.dimension,
            self.prototiles.clone(),
            self.expansion.clone(),
            digits,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> CycNum {
        CycNum::from_ints(5, &[1, 1, 0, 0, 1])
    }

    pub(crate) fn fib_squared() -> SubstitutionSystem {
        let n = 5;
        let c = |v: i64| CycNum::from_int(n, v);
        let digits = vec![vec![vec![c(0), c(1)], vec![c(0)]], vec![vec![c(2)], vec![c(1)]]];
        SubstitutionSystem::from_digits("fib2", n, 1, vec!["a".into(), "b".into()], &tau() * &tau(), &digits).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let n = 8;
        let f = AffineSimilarity::new(CycNum::xi_pow(n, 1), true, CycNum::from_ints(n, &[1, 2])).unwrap();
        let g = AffineSimilarity::new(CycNum::from_ints(n, &[0, 0, 3]), false, CycNum::xi_pow(n, 3)).unwrap();
        let x = CycNum::from_ints(n, &[2, -1, 0, 5]);
        assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
        assert_eq!(g.compose(&f).apply(&x), g.apply(&f.apply(&x)));
        assert_eq!(f.inverse().apply(&f.apply(&x)), x);
        assert_eq!(f.compose(&f.inverse()), AffineSimilarity::identity(n));
        assert_eq!(f.inverse().inverse(), f);
        let z = f.apply_complex(x.embed());
        assert!((z - f.apply(&x).embed()).norm() < 1e-12);
    }

    #[test]
    fn fixed_points() {
        let n = 8;
        let f = AffineSimilarity::new(CycNum::from_ratio(n, 1, 2), true, CycNum::xi_pow(n, 1)).unwrap();
        let p = f.fixed_point_complex();
        assert!((f.apply_complex(p) - p).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_systems() {
        let n = 5;
        let grow = AffineSimilarity::linear(CycNum::from_int(n, 2)).unwrap();
        let r = SubstitutionSystem::new("x", n, 1, vec!["a".into()], CycNum::from_int(n, 2), vec![vec![vec![grow]]]);
        assert!(matches!(r, Err(Error::InvalidSystem(_))));
        let r = SubstitutionSystem::new("x", n, 1, vec!["a".into()], CycNum::from_ratio(n, 1, 2), vec![vec![vec![]]]);
        assert!(r.is_err());
        let half = AffineSimilarity::linear(CycNum::from_ratio(n, 1, 2)).unwrap();
        let rot = AffineSimilarity::linear(CycNum::xi_pow(n, 1).scale(&num::BigRational::new(1.into(), 2.into())))
            .unwrap();
        let r = SubstitutionSystem::new("x", n, 1, vec!["a".into()], CycNum::from_int(n, 2), vec![vec![vec![rot]]]);
        assert!(r.is_err(), "non-real map in a 1-D system");
        let r = SubstitutionSystem::new(
            "x",
            n,
            1,
            vec!["a".into()],
            CycNum::from_int(n, 2),
            vec![vec![vec![half.clone(), half]]],
        );
        assert!(r.is_err(), "duplicate map");
    }

    #[test]
    fn digit_matrix_round_trip() {
        let s = fib_squared();
        assert!(s.is_pure_translation());
        let d = s.digit_matrix().unwrap();
        assert_eq!(d[0][0], vec![CycNum::from_int(5, 0), CycNum::from_int(5, 1)]);
        assert_eq!(d[1][0], vec![CycNum::from_int(5, 2)]);
        assert_eq!(s.map_count(), 5);
    }

    #[test]
    fn square_of_fibonacci_squared() {
        let s = fib_squared();
        let s2 = s.power(2).unwrap();
        assert_eq!(s2.expansion(), &tau().pow(4).unwrap());
        assert_eq!(s2.substitution_matrix(), vec![vec![5, 3], vec![3, 2]]);
        assert!(s2.is_pure_translation());
        // D2_ij = union_k D_ik + lambda D_kj
        let l = &tau() * &tau();
        let d = s.digit_matrix().unwrap();
        let mut want: Vec<CycNum> = Vec::new();
        for k in 0..2 {
            for a in &d[0][k] {
                for b in &d[k][1] {
                    want.push(a + &(&l * b));
                }
            }
        }
        want.sort();
        assert_eq!(s2.digit_matrix().unwrap()[0][1], want);
        assert_eq!(s.power(1).unwrap(), s);
    }

    #[test]
    fn translate_digits_by_zero_and_uniform_shift() {
        let s = fib_squared();
        let z = CycNum::zero(5);
        assert_eq!(s.translate_digits(&[z.clone(), z]).unwrap(), s);
        let one = CycNum::one(5);
        let t = s.translate_digits(&[one.clone(), one.clone()]).unwrap();
        let shift = &(&tau() * &tau()) - &one;
        let (d0, d1) = (s.digit_matrix().unwrap(), t.digit_matrix().unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let expect: Vec<CycNum> = d0[i][j].iter().map(|d| d + &shift).collect();
                assert_eq!(d1[i][j], expect);
            }
        }
    }

    #[test]
    fn transform_digits_by_tau() {
        let s = fib_squared();
        assert_eq!(s.transform_digits(&CycNum::one(5), false).unwrap(), s);
        let t = s.transform_digits(&tau(), false).unwrap().digit_matrix().unwrap();
        let z = CycNum::zero(5);
        assert_eq!(t[0][0], vec![tau(), z.clone()]); // coefficient order: -ξ^2 - ξ^3 < 0
        assert_eq!(t[0][1], vec![z]);
        assert_eq!(t[1][0], vec![&tau() + &tau()]);
        assert_eq!(t[1][1], vec![tau()]);
        assert_eq!(s.transform_digits(&CycNum::zero(5), false), Err(Error::DivisionByZero));
    }
}
