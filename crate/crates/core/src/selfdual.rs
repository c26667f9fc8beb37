//! Self-duality tests: a necessary condition on the substitution matrix and
//! an algebraic certificate built from digit translates.
//!
//! A certificate for `s` and its dual `s'` is a permutation `p`, an optional
//! scaling `c`, a power `r` and translations `t_1..t_m` with
//!
//! ```text
//! D'_{p(i) p(j)} = c D_ij + (L t_j - t_i)      for all i, j,
//! ```
//!
//! where `D`, `D'` are the digit matrices of the `r`-fold iterates and
//! `L = lambda^r`. The iterate defines the same tiling space, and it is only
//! needed when the dual expansion differs from `lambda` by a root of unity
//! (for instance `lambda' = -lambda`).

use crate::cyclotomic::{solve_linear, CycNum, LinearSolveError};
use crate::dualizer::{dualize, StarMapChoice};
use crate::error::{Error, Result};
use crate::substitution::{DigitMatrix, Incidence, IntMatrix, SubstitutionSystem};
use serde::Serialize;
use std::collections::BTreeSet;

/// Largest number of prototiles the permutation search accepts.
pub const MAX_PROTOTILES: usize = 8;

/// `delta` with `s2 = s + delta` as sets.
pub fn match_translate(s: &[CycNum], s2: &[CycNum]) -> Option<CycNum> {
    if s.len() != s2.len() || s.is_empty() {
        return None;
    }
    let order = s[0].order();
    let sum = |v: &[CycNum]| v.iter().fold(CycNum::zero(order), |acc, x| &acc + x);
    let n = CycNum::from_int(order, s.len() as i64);
    let delta = (&sum(s2) - &sum(s)).try_div(&n).ok()?;
    let shifted: BTreeSet<CycNum> = s.iter().map(|x| x + &delta).collect();
    let target: BTreeSet<CycNum> = s2.iter().cloned().collect();
    (shifted == target).then_some(delta)
}

fn check_square(m: &IntMatrix) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::input("matrix must be square and nonempty"));
    }
    if n > MAX_PROTOTILES {
        return Err(Error::input(format!("permutation search supports at most {MAX_PROTOTILES} prototiles, got {n}")));
    }
    Ok(n)
}

fn sorted(v: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = v.collect();
    v.sort_unstable();
    v
}

/// All permutations `p` with `M_ji = M_{p(i) p(j)}`, in lexicographic order.
pub fn necessary_permutations(m: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let n = check_square(m)?;
    // column i of M must equal row p(i) as a multiset
    let cols: Vec<Vec<u64>> = (0..n).map(|i| sorted((0..n).map(|j| m[j][i]))).collect();
    let rows: Vec<Vec<u64>> = (0..n).map(|i| sorted(m[i].iter().copied())).collect();
    let allowed: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&a| cols[i] == rows[a] && m[i][i] == m[a][a]).collect()).collect();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(m, &allowed, &mut perm, &mut used, &mut out);
    Ok(out)
}

fn extend(m: &IntMatrix, allowed: &[Vec<usize>], perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let i = perm.len();
    if i == m.len() {
        out.push(perm.clone());
        return;
    }
    for &a in &allowed[i] {
        if used[a] {
            continue;
        }
        let consistent = (0..i).all(|j| m[j][i] == m[a][perm[j]] && m[i][j] == m[perm[j]][a]);
        if !consistent {
            continue;
        }
        used[a] = true;
        perm.push(a);
        extend(m, allowed, perm, used, out);
        perm.pop();
        used[a] = false;
    }
}

/// The lexicographically least permutation `p` with `M^T = P M P^-1`, i.e.
/// `M_ji = M_{p(i) p(j)}`.
pub fn necessary_check(m: &IntMatrix) -> Result<Option<Vec<usize>>> {
    Ok(necessary_permutations(m)?.into_iter().next())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Scaled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualCertificate {
    pub permutation: Vec<usize>,
    pub scaling: Option<CycNum>,
    pub power: u32,
    pub translations: Vec<CycNum>,
    /// `delta_ij = L t_j - t_i`.
    pub shift_matrix: Vec<Vec<CycNum>>,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Obstruction {
    /// `lambda' / lambda` is not a root of unity.
    ExpansionMismatch { expansion: CycNum, dual_expansion: CycNum },
    /// No permutation satisfies the matrix condition.
    NoPermutation,
    Cardinality,
    NoTranslateMatch,
    InconsistentSystem,
    UnderdeterminedSystem,
}

impl Obstruction {
    pub fn name(&self) -> &'static str {
        match self {
            Obstruction::ExpansionMismatch { .. } => "expansion mismatch",
            Obstruction::NoPermutation => "no permutation",
            Obstruction::Cardinality => "cardinality mismatch",
            Obstruction::NoTranslateMatch => "no translate match",
            Obstruction::InconsistentSystem => "inconsistent linear system",
            Obstruction::UnderdeterminedSystem => "underdetermined linear system",
        }
    }
}

/// Why the search failed, for the first candidate in search order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchFailure {
    pub obstruction: String,
    pub detail: Obstruction,
    pub entry: Option<[usize; 2]>,
    pub permutation: Option<Vec<usize>>,
    pub scaling: Option<CycNum>,
    pub mode: Mode,
    /// Number of `(permutation, scaling)` pairs tried.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Certificate(SelfDualCertificate),
    Failure(SearchFailure),
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&SelfDualCertificate> {
        match self {
            SearchOutcome::Certificate(c) => Some(c),
            SearchOutcome::Failure(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            SearchOutcome::Certificate(c) => serde_json::to_value(c),
            SearchOutcome::Failure(f) => serde_json::to_value(f),
        };
        serde_json::to_string_pretty(&v.expect("serializable")).expect("serializable")
    }
}

/// Smallest `r` with `lambda'^r = lambda^r`, if any.
fn common_power(lambda: &CycNum, dual: &CycNum) -> Option<u32> {
    let ratio = dual.try_div(lambda).ok()?;
    // roots of unity in Q(xi_n) have order dividing lcm(2, n)
    let n = lambda.order();
    let bound = if n % 2 == 0 { n } else { 2 * n };
    let mut acc = ratio.clone();
    for r in 1..=bound {
        if acc.is_one() {
            return Some(r);
        }
        acc = &acc * &ratio;
    }
    None
}

struct Setup {
    lambda: CycNum,
    digits: DigitMatrix,
    dual_digits: DigitMatrix,
    power: u32,
    perms: Vec<Vec<usize>>,
}

fn setup(s: &SubstitutionSystem, c: StarMapChoice) -> Result<std::result::Result<Setup, Obstruction>> {
    if !s.is_pure_translation() {
        return Err(Error::NotPureTranslation);
    }
    let dual = dualize(s, c)?;
    let Some(power) = common_power(s.expansion(), dual.expansion()) else {
        return Ok(Err(Obstruction::ExpansionMismatch {
            expansion: s.expansion().clone(),
            dual_expansion: dual.expansion().clone(),
        }));
    };
    let perms = necessary_permutations(&s.substitution_matrix())?;
    if perms.is_empty() {
        return Ok(Err(Obstruction::NoPermutation));
    }
    let (sp, dp) = (s.power(power)?, dual.power(power)?);
    Ok(Ok(Setup {
        lambda: sp.expansion().clone(),
        digits: sp.digit_matrix()?,
        dual_digits: dp.digit_matrix()?,
        power,
        perms,
    }))
}

/// Scaling candidates: every ratio taking the first gap of some entry to a
/// gap of the matched dual entry, plus `1, lambda, lambda^-1` and their Galois
/// images. Sorted coefficient-lexicographically.
fn scaling_candidates(s: &SubstitutionSystem, st: &Setup) -> Result<Vec<CycNum>> {
    let n = s.order();
    let mut out = BTreeSet::new();
    let base = [CycNum::one(n), s.expansion().clone(), s.expansion().inverse()?];
    for k in (1..n as i64).filter(|&k| num::integer::gcd(k, n as i64) == 1) {
        for b in &base {
            out.insert(b.galois(k)?);
        }
    }
    let m = st.digits.len();
    for p in &st.perms {
        for i in 0..m {
            for j in 0..m {
                let (d, e) = (&st.digits[i][j], &st.dual_digits[p[i]][p[j]]);
                if d.len() < 2 || d.len() != e.len() {
                    continue;
                }
                let gap = &d[1] - &d[0];
                for a in e {
                    for b in e {
                        if a != b {
                            out.insert((a - b).try_div(&gap)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

type Attempt = std::result::Result<SelfDualCertificate, (Obstruction, Option<[usize; 2]>)>;

fn attempt(st: &Setup, perm: &[usize], scaling: &CycNum, mode: Mode) -> Attempt {
    let m = st.digits.len();
    let mut shift = vec![vec![CycNum::zero(scaling.order()); m]; m];
    for i in 0..m {
        for j in 0..m {
            let d: Vec<CycNum> = st.digits[i][j].iter().map(|x| scaling * x).collect();
            let e = &st.dual_digits[perm[i]][perm[j]];
            if d.len() != e.len() {
                return Err((Obstruction::Cardinality, Some([i, j])));
            }
            if d.is_empty() {
                continue;
            }
            match match_translate(&d, e) {
                Some(delta) => shift[i][j] = delta,
                None => return Err((Obstruction::NoTranslateMatch, Some([i, j]))),
            }
        }
    }
    // L t_j - t_i = delta_ij over all entries with nonempty digit sets
    let order = scaling.order();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut where_ = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if st.digits[i][j].is_empty() {
                continue;
            }
            let mut row = vec![CycNum::zero(order); m];
            row[j] = &row[j] + &st.lambda;
            row[i] = &row[i] - &CycNum::one(order);
            rows.push(row);
            rhs.push(shift[i][j].clone());
            where_.push([i, j]);
        }
    }
    let t = match solve_linear(&rows, &rhs) {
        Ok(t) => t,
        Err(LinearSolveError::Inconsistent { .. }) => return Err((Obstruction::InconsistentSystem, None)),
        Err(LinearSolveError::Underdetermined) => return Err((Obstruction::UnderdeterminedSystem, None)),
    };
    let shift_matrix = (0..m).map(|i| (0..m).map(|j| &(&st.lambda * &t[j]) - &t[i]).collect()).collect();
    Ok(SelfDualCertificate {
        permutation: perm.to_vec(),
        scaling: (mode == Mode::Scaled).then(|| scaling.clone()),
        power: st.power,
        translations: t,
        shift_matrix,
        mode,
    })
}

/// Searches permutations (lexicographic) and, with `allow_scaling`, scalings
/// (coefficient-lexicographic) for a certificate. The first success wins;
/// otherwise the obstruction of the first candidate is reported.
pub fn certificate_search(s: &SubstitutionSystem, c: StarMapChoice, allow_scaling: bool) -> Result<SearchOutcome> {
    let mode = if allow_scaling { Mode::Scaled } else { Mode::Strict };
    let fail = |detail: Obstruction, entry, permutation, scaling, candidates| {
        SearchOutcome::Failure(SearchFailure {
            obstruction: detail.name().to_string(),
            detail,
            entry,
            permutation,
            scaling,
            mode,
            candidates,
        })
    };
    let st = match setup(s, c)? {
        Ok(st) => st,
        Err(o) => return Ok(fail(o, None, None, None, 0)),
    };
    let scalings = if allow_scaling { scaling_candidates(s, &st)? } else { vec![CycNum::one(s.order())] };
    let mut first = None;
    let mut tried = 0;
    for p in &st.perms {
        for sc in &scalings {
            tried += 1;
            match attempt(&st, p, sc, mode) {
                Ok(cert) => return Ok(SearchOutcome::Certificate(cert)),
                Err(e) => {
                    first.get_or_insert((e, p.clone(), sc.clone()));
                }
            }
        }
    }
    let ((o, entry), p, sc) = first.expect("at least one candidate");
    Ok(fail(o, entry, Some(p), allow_scaling.then_some(sc), tried))
}

/// Re-checks a certificate entry by entry, independently of the search.
pub fn verify_certificate(s: &SubstitutionSystem, c: StarMapChoice, cert: &SelfDualCertificate) -> Result<bool> {
    let m = s.size();
    let mut seen = vec![false; m];
    for &a in &cert.permutation {
        if a >= m || std::mem::replace(&mut seen[a], true) {
            return Ok(false);
        }
    }
    if cert.permutation.len() != m || cert.translations.len() != m || cert.shift_matrix.len() != m || cert.power == 0
    {
        return Ok(false);
    }
    let dual = dualize(s, c)?;
    let (sp, dp) = (s.power(cert.power)?, dual.power(cert.power)?);
    if sp.expansion() != dp.expansion() {
        return Ok(false);
    }
    let (d, e) = (sp.digit_matrix()?, dp.digit_matrix()?);
    let lambda = sp.expansion();
    let one = CycNum::one(s.order());
    let scaling = cert.scaling.as_ref().unwrap_or(&one);
    let t = &cert.translations;
    for i in 0..m {
        if cert.shift_matrix[i].len() != m {
            return Ok(false);
        }
        for j in 0..m {
            let delta = &(lambda * &t[j]) - &t[i];
            if cert.shift_matrix[i][j] != delta {
                return Ok(false);
            }
            let lhs: BTreeSet<CycNum> = d[i][j].iter().map(|x| &(scaling * x) + &delta).collect();
            let rhs: BTreeSet<CycNum> = e[cert.permutation[i]][cert.permutation[j]].iter().cloned().collect();
            if lhs != rhs || d[i][j].len() != rhs.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn c(v: i64) -> CycNum {
        CycNum::from_int(5, v)
    }

    fn tau() -> CycNum {
        CycNum::from_ints(5, &[1, 1, 0, 0, 1])
    }

    #[test]
    fn translate_matching() {
        assert_eq!(match_translate(&[c(0), c(1)], &[c(3), c(4)]), Some(c(3)));
        assert_eq!(match_translate(&[c(0), c(1)], &[c(0), c(2)]), None);
        assert_eq!(match_translate(&[c(0)], &[c(0), c(2)]), None);
        let t2 = &tau() * &tau();
        let ti = tau().inverse().unwrap();
        let got = match_translate(&[c(0), t2.clone()], &[ti.clone(), &t2 + &ti]);
        assert_eq!(got, Some(ti));
    }

    #[test]
    fn matrix_condition() {
        assert_eq!(necessary_check(&vec![vec![1, 1], vec![2, 1]]).unwrap(), Some(vec![1, 0]));
        assert_eq!(necessary_check(&vec![vec![2, 1], vec![1, 1]]).unwrap(), Some(vec![0, 1]));
        assert_eq!(necessary_check(&vec![vec![0, 1], vec![2, 0]]).unwrap(), Some(vec![1, 0]));
        assert_eq!(necessary_check(&vec![vec![1, 2], vec![3, 2]]).unwrap(), None);
        assert!(necessary_check(&vec![vec![1; 9]; 9]).is_err());
        assert!(necessary_check(&vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn three_letter_permutations_are_lexicographic() {
        let m = vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]];
        let all = necessary_permutations(&m).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ab_aab_certificate_via_square() {
        let f = fixture("ab_aab").unwrap();
        let out = certificate_search(&f.system, f.default_star, false).unwrap();
        let cert = out.certificate().expect("certificate");
        assert_eq!(cert.permutation, vec![1, 0]);
        assert_eq!(cert.power, 2);
        assert!(verify_certificate(&f.system, f.default_star, cert).unwrap());
        let mut bad = cert.clone();
        bad.permutation = vec![0, 1];
        assert!(!verify_certificate(&f.system, f.default_star, &bad).unwrap());
    }

    #[test]
    fn fibonacci_squared_strict_obstruction() {
        let f = fixture("fibonacci_squared").unwrap();
        match certificate_search(&f.system, f.default_star, false).unwrap() {
            SearchOutcome::Failure(e) => {
                assert_eq!(e.detail, Obstruction::NoTranslateMatch);
                assert_eq!(e.entry, Some([0, 0]));
            }
            SearchOutcome::Certificate(c) => panic!("unexpected certificate {c:?}"),
        }
    }

    #[test]
    fn penrose_is_not_pure_translation() {
        let f = fixture("penrose").unwrap();
        assert!(matches!(certificate_search(&f.system, f.default_star, false), Err(Error::NotPureTranslation)));
    }
}
