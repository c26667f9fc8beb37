//! Star-dual substitutions: transpose, invert, apply a Galois automorphism.
//!
//! Two rules are used, depending on the form of the input:
//!
//! * pure-translation systems: the dual digit matrix is `D'_ij = (lambda^-1 D_ji)*`
//!   with expansion `lambda' = (lambda*)^-1`;
//! * general matrix function systems: `entries'[i][j] = { (f^-1)* : f in entries[j][i] }`.
//!
//! Both give the same expansion. On a pure-translation system the two rules
//! differ by the point reflection `x -> -x` of the dual prototiles.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::substitution::{AffineSimilarity, DigitMatrix, SubstitutionSystem};
use num::Integer;

pub const STAR_SUFFIX: &str = "⋆";
const SHARP_SUFFIX: &str = "♯";

/// The automorphism `xi -> xi^k` used as star map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StarMapChoice {
    order: u32,
    k: u32,
}

/// Residues `k` in `2..n` coprime to `n`.
pub fn valid_residues(order: u32) -> Vec<u32> {
    (2..order).filter(|k| k.gcd(&order) == 1).collect()
}

impl StarMapChoice {
    pub fn new(order: u32, k: i64) -> Result<Self> {
        let n = order as i64;
        let r = k.rem_euclid(n);
        let invalid = |reason: String| Error::InvalidStarChoice { k, n: order, reason };
        if r.gcd(&n) != 1 {
            return Err(invalid(format!("gcd(k, n) != 1; valid residues are {:?}", valid_residues(order))));
        }
        if r == 1 {
            return Err(invalid(format!(
                "the identity automorphism yields expanding dual maps; valid residues are {:?}",
                valid_residues(order)
            )));
        }
        Ok(StarMapChoice { order, k: r as u32 })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The choice undoing this one: `k^-1 mod n`.
    pub fn inverse(&self) -> StarMapChoice {
        let k = (1..self.order).find(|x| (x * self.k) % self.order == 1).expect("k is a unit");
        StarMapChoice { order: self.order, k }
    }
}

pub fn invert_map(f: &AffineSimilarity) -> AffineSimilarity {
    f.inverse()
}

pub fn star_map(f: &AffineSimilarity, c: StarMapChoice) -> Result<AffineSimilarity> {
    if f.order() != c.order {
        return Err(Error::OrderMismatch(c.order, f.order()));
    }
    f.galois(c.k as i64)
}

fn toggle(s: &str, suffix: &str) -> String {
    match s.strip_suffix(suffix) {
        Some(base) => base.to_string(),
        None => format!("{s}{suffix}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualRule {
    Digit,
    InverseMap,
}

pub fn dual_rule(s: &SubstitutionSystem) -> DualRule {
    if s.is_pure_translation() {
        DualRule::Digit
    } else {
        DualRule::InverseMap
    }
}

/// The star-dual system. Prototile and map labels get (or lose) the `⋆` / `♯`
/// suffix, so dualizing twice with inverse choices restores the input exactly.
pub fn dualize(s: &SubstitutionSystem, c: StarMapChoice) -> Result<SubstitutionSystem> {
    if s.order() != c.order {
        return Err(Error::OrderMismatch(s.order(), c.order));
    }
    let k = c.k as i64;
    let star_lambda = s.expansion().galois(k)?;
    let invalid = |reason: String| Error::InvalidStarChoice { k, n: c.order, reason };
    if star_lambda.abs() >= 1.0 {
        return Err(invalid(format!(
            "the Galois image {star_lambda} of the expansion is not contracting; valid residues are {:?}",
            valid_residues(c.order)
        )));
    }
    let dual_expansion = star_lambda.inverse()?;
    let name = toggle(s.name(), STAR_SUFFIX);
    let prototiles = s.prototiles().iter().map(|p| toggle(p, STAR_SUFFIX)).collect();
    let m = s.size();

    if dual_rule(s) == DualRule::Digit {
        let lambda_inv = s.expansion().inverse()?;
        let d = s.digit_matrix()?;
        let mut dual: DigitMatrix = vec![vec![Vec::new(); m]; m];
        for (i, row) in dual.iter_mut().enumerate() {
            for (j, set) in row.iter_mut().enumerate() {
                *set = d[j][i].iter().map(|x| (&lambda_inv * x).galois(k)).collect::<Result<_>>()?;
            }
        }
        return SubstitutionSystem::from_digits(name, s.order(), s.dimension(), prototiles, dual_expansion, &dual);
    }

    let mut entries = vec![vec![Vec::new(); m]; m];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, set) in row.iter_mut().enumerate() {
            for f in s.entry(j, i) {
                let g = star_map(&invert_map(f), c)?;
                if !g.is_contracting() {
                    return Err(invalid(format!(
                        "dual of map {f} (child {j}, parent {i}) has ratio {:.6} >= 1",
                        g.ratio()
                    )));
                }
                let g = match f.label() {
                    Some(l) => g.with_label(toggle(l, SHARP_SUFFIX)),
                    None => g,
                };
                set.push(g);
            }
        }
    }
    SubstitutionSystem::new(name, s.order(), s.dimension(), prototiles, dual_expansion, entries)
}

/// `galois(lambda, k) * dual expansion`, which is 1 for every valid dual.
pub fn expansion_check(s: &SubstitutionSystem, dual: &SubstitutionSystem, c: StarMapChoice) -> Result<CycNum> {
    Ok(&s.expansion().galois(c.k as i64)? * dual.expansion())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{geometric_realization, parse_word_substitution, Incidence};

    fn tau() -> CycNum {
        CycNum::from_ints(5, &[1, 1, 0, 0, 1])
    }

    #[test]
    fn star_choice_validation() {
        assert!(StarMapChoice::new(5, 1).is_err());
        assert!(StarMapChoice::new(5, 6).is_err());
        assert!(StarMapChoice::new(8, 2).is_err());
        assert_eq!(StarMapChoice::new(5, -2).unwrap().k(), 3);
        assert_eq!(StarMapChoice::new(5, 3).unwrap().inverse().k(), 2);
        assert_eq!(StarMapChoice::new(8, 3).unwrap().inverse().k(), 3);
        assert_eq!(valid_residues(8), vec![3, 5, 7]);
    }

    #[test]
    fn invert_and_star_examples() {
        let n = 5;
        let f = AffineSimilarity::new(CycNum::from_int(n, 2), false, CycNum::from_int(n, 3)).unwrap();
        let g = invert_map(&f);
        assert_eq!((g.scale(), g.translate()), (&CycNum::from_ratio(n, 1, 2), &CycNum::from_ratio(n, -3, 2)));
        let c = AffineSimilarity::new(CycNum::one(n), true, CycNum::zero(n)).unwrap();
        assert_eq!(invert_map(&c), c);

        let t2inv = (&tau() * &tau()).inverse().unwrap();
        let f = AffineSimilarity::linear(t2inv).unwrap();
        let g = star_map(&f, StarMapChoice::new(5, 2).unwrap()).unwrap();
        assert_eq!(g.scale(), &(&tau() * &tau()));

        let h = AffineSimilarity::new(CycNum::from_ratio(n, 1, 2), false, CycNum::from_int(n, 3)).unwrap();
        assert_eq!(star_map(&h, StarMapChoice::new(5, 2).unwrap()).unwrap(), h);

        let r = AffineSimilarity::linear(CycNum::xi_pow(8, 1)).unwrap();
        let g = star_map(&r, StarMapChoice::new(8, 3).unwrap()).unwrap();
        assert_eq!(g.scale(), &CycNum::xi_pow(8, 3));
    }

    #[test]
    fn fibonacci_squared_dual() {
        let s = geometric_realization(&parse_word_substitution("a -> aab\nb -> ab").unwrap()).unwrap();
        let c = StarMapChoice::new(5, 2).unwrap();
        let d = dualize(&s, c).unwrap();
        let t2 = &tau() * &tau();
        let z = CycNum::zero(5);
        let dm = d.digit_matrix().unwrap();
        assert_eq!(dm[0][0], vec![z.clone(), t2.clone()]);
        assert_eq!(dm[0][1], vec![&t2 + &t2]);
        assert_eq!(dm[1][0], vec![z]);
        assert_eq!(dm[1][1], vec![t2.clone()]);
        assert_eq!(d.expansion(), &t2);
        assert_eq!(d.prototiles(), &["a⋆".to_string(), "b⋆".to_string()]);
        assert!(expansion_check(&s, &d, c).unwrap().is_one());
        assert_eq!(dualize(&d, c.inverse()).unwrap(), s);
        let mt = d.substitution_matrix();
        let m = s.substitution_matrix();
        assert_eq!(mt, vec![vec![m[0][0], m[1][0]], vec![m[0][1], m[1][1]]]);
    }

    #[test]
    fn digit_rule_is_inverse_rule_reflected() {
        let s = geometric_realization(&parse_word_substitution("a -> aab\nb -> ab").unwrap()).unwrap();
        let c = StarMapChoice::new(5, 2).unwrap();
        let d = dualize(&s, c).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut by_maps: Vec<CycNum> =
                    s.entry(j, i).iter().map(|f| -star_map(&invert_map(f), c).unwrap().translate()).collect();
                let mut by_digits: Vec<CycNum> = d.entry(i, j).iter().map(|g| g.translate().clone()).collect();
                by_maps.sort();
                by_digits.sort();
                assert_eq!(by_maps, by_digits);
            }
        }
    }

    #[test]
    fn orientation_reversing_one_dimensional_dual() {
        let s = geometric_realization(&parse_word_substitution("a -> ab\nb -> aab").unwrap()).unwrap();
        let d = dualize(&s, StarMapChoice::new(8, 3).unwrap()).unwrap();
        assert!(d.expansion().embed().re < -2.4);
        // xi -> xi^7 fixes sqrt 2, so the dual would expand
        assert!(matches!(
            dualize(&s, StarMapChoice::new(8, 7).unwrap()),
            Err(Error::InvalidStarChoice { .. })
        ));
    }
}
