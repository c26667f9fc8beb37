use super::matrix::{is_primitive, pf_data, Incidence};
use super::{DigitMatrix, SubstitutionSystem, WordSubstitution};
use crate::cyclotomic::{solve_linear, CycNum};
use crate::error::{Error, Result};

/// `(n, sqrt(r))` for the squarefree radicands this crate can house.
fn quadratic_field(radicand: i64) -> Option<(u32, CycNum)> {
    match radicand {
        // sqrt 5 = 1 + 2 xi + 2 xi^4 in Q(xi_5)
        5 => Some((5, CycNum::from_ints(5, &[1, 2, 0, 0, 2]))),
        // sqrt 2 = xi + xi^7 in Q(xi_8)
        2 => Some((8, CycNum::from_ints(8, &[0, 1, 0, 0, 0, 0, 0, 1]))),
        _ => None,
    }
}

/// Splits `d > 0` as `s^2 * r` with `r` squarefree.
fn squarefree_split(mut d: i64) -> (i64, i64) {
    let mut s = 1;
    let mut p = 2;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

/// Interval realization of a word substitution with a unimodular quadratic
/// PF eigenvalue.
///
/// Prototile `j` is `[0, l_j]` with `l` the exact left PF eigenvector, `l_0 = 1`.
/// The digits of column `j` are the prefix sums of lengths along `w(j)`.
pub fn geometric_realization(w: &WordSubstitution) -> Result<SubstitutionSystem> {
    let mat = w.substitution_matrix();
    if !is_primitive(&mat) {
        return Err(Error::NotPrimitive);
    }
    let pf = pf_data(&mat)?.eigenvalue;

    // lambda^2 = p lambda + q with q = +-1
    let (p, q) = [1i64, -1]
        .into_iter()
        .map(|q| ((pf - q as f64 / pf).round() as i64, q))
        .find(|&(p, q)| (pf * pf - p as f64 * pf - q as f64).abs() < 1e-8 * pf * pf)
        .ok_or_else(|| Error::UnsupportedField(format!("PF eigenvalue {pf} is not a quadratic unit")))?;
    let disc = p * p + 4 * q;
    let (s, radicand) = squarefree_split(disc);
    if radicand == 1 {
        return Err(Error::UnsupportedField(format!("PF eigenvalue {pf} is rational")));
    }
    let (order, root) = quadratic_field(radicand)
        .ok_or_else(|| Error::UnsupportedField(format!("Q(sqrt {radicand}) is not supported")))?;
    let half = num::BigRational::new(1.into(), 2.into());
    let lambda = (&CycNum::from_int(order, p) + &root.scale(&num::BigRational::from_integer(s.into()))).scale(&half);

    // l M = lambda l with l_0 = 1
    let m = mat.len();
    let one = CycNum::one(order);
    let coef = |i: usize, j: usize| {
        let mij = CycNum::from_int(order, mat[i][j] as i64);
        if i == j {
            &mij - &lambda
        } else {
            mij
        }
    };
    let mut lengths = vec![one];
    if m > 1 {
        let a: Vec<Vec<CycNum>> = (0..m).map(|j| (1..m).map(|i| coef(i, j)).collect()).collect();
        let b: Vec<CycNum> = (0..m).map(|j| -coef(0, j)).collect();
        let rest = solve_linear(&a, &b)
            .map_err(|e| Error::UnsupportedField(format!("no exact left eigenvector: {e:?}")))?;
        lengths.extend(rest);
    } else if !coef(0, 0).is_zero() {
        return Err(Error::UnsupportedField("no exact left eigenvector".into()));
    }

    let mut digits: DigitMatrix = vec![vec![Vec::new(); m]; m];
    for (j, img) in w.images().iter().enumerate() {
        let mut offset = CycNum::zero(order);
        for &i in img {
            digits[i][j].push(offset.clone());
            offset = &offset + &lengths[i];
        }
    }
    let names = w.alphabet().iter().map(|c| c.to_string()).collect();
    let rules: Vec<String> = w.to_string().lines().map(|l| l.replace(' ', "")).collect();
    SubstitutionSystem::from_digits(rules.join(","), order, 1, names, lambda, &digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::parse_word_substitution;

    fn c(n: u32, v: i64) -> CycNum {
        CycNum::from_int(n, v)
    }

    #[test]
    fn fibonacci_squared_realization() {
        let w = parse_word_substitution("a -> aab\nb -> ab").unwrap();
        let s = geometric_realization(&w).unwrap();
        let tau = CycNum::from_ints(5, &[1, 1, 0, 0, 1]);
        assert_eq!(s.order(), 5);
        assert_eq!(s.expansion(), &(&tau * &tau));
        let d = s.digit_matrix().unwrap();
        assert_eq!(d, vec![vec![vec![c(5, 0), c(5, 1)], vec![c(5, 0)]], vec![vec![c(5, 2)], vec![c(5, 1)]]]);
        assert_eq!(s.name(), "a->aab,b->ab");
    }

    #[test]
    fn ab_aab_realization() {
        let w = parse_word_substitution("a -> ab\nb -> aab").unwrap();
        let s = geometric_realization(&w).unwrap();
        let sqrt2 = CycNum::from_ints(8, &[0, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(s.expansion(), &(&c(8, 1) + &sqrt2));
        let d = s.digit_matrix().unwrap();
        assert_eq!(d, vec![vec![vec![c(8, 0)], vec![c(8, 0), c(8, 1)]], vec![vec![c(8, 1)], vec![c(8, 2)]]]);
        assert_eq!(s.substitution_matrix(), w.substitution_matrix());
    }

    #[test]
    fn unsupported_inputs() {
        let w = parse_word_substitution("a -> aa").unwrap();
        assert!(matches!(geometric_realization(&w), Err(Error::UnsupportedField(_))));
        let w = parse_word_substitution("a -> a\nb -> b").unwrap();
        assert_eq!(geometric_realization(&w), Err(Error::NotPrimitive));
        // lambda = 1 + sqrt 3, not a unit
        let w = parse_word_substitution("a -> aab\nb -> aaab").unwrap();
        assert!(matches!(geometric_realization(&w), Err(Error::UnsupportedField(_))));
        // golden mean: Fibonacci itself, lengths (1, tau^-1)
        let w = parse_word_substitution("a -> ab\nb -> a").unwrap();
        let s = geometric_realization(&w).unwrap();
        assert_eq!(s.expansion(), &CycNum::from_ints(5, &[1, 1, 0, 0, 1]));
    }
}
