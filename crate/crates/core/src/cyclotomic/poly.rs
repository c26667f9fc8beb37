//! Integer and rational polynomial helpers backing the field arithmetic.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycPoly {
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    /// Builds a polynomial, trimming trailing zeros. The zero polynomial is
    /// represented by an empty coefficient vector.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        CycPoly::new(c)
    }

    /// Division by a monic divisor, returning `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &CycPoly) -> (CycPoly, CycPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (CycPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[k]);
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k - dd + i] -= &lead * c;
            }
            quot[k - dd] = lead;
        }
        rem.truncate(dd);
        (CycPoly::new(quot), CycPoly::new(rem))
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// The n-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Phi_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u32) -> CycPoly {
    assert!(n >= 1, "cyclotomic_polynomial requires n >= 1");
    let mut p = CycPoly::x_pow_minus_one(n as usize);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

// Dense rational polynomials, lowest degree first, trimmed.

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_sub_scaled_shift(a: &mut QPoly, b: &[BigRational], scale: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] -= scale * c;
    }
}

fn q_div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), q_trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        q_sub_scaled_shift(&mut rem, b, &c, k - db);
        quot[k - db] = c;
    }
    rem.truncate(db);
    (q_trim(quot), q_trim(rem))
}

fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(out)
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    q_trim(out)
}

/// Inverse of `a` modulo the irreducible `modulus` via the extended Euclidean
/// algorithm. Returns `None` when `a` is zero modulo `modulus`.
pub(crate) fn q_inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<QPoly> {
    let a = q_trim(a.to_vec());
    if a.is_empty() {
        return None;
    }
    // Invariant: s_i * a == r_i (mod modulus).
    let (mut r0, mut r1) = (modulus.to_vec(), a);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_div_rem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; for an irreducible modulus it is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let inv: QPoly = s0.into_iter().map(|x| x * &c).collect();
    Some(q_div_rem(&inv, modulus).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), CycPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), CycPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(5), CycPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(8), CycPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), CycPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(format!("{}", cyclotomic_polynomial(5)), "x^4 + x^3 + x^2 + x + 1");
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert!(p.coeffs().contains(&BigInt::from(-2)));
        assert_eq!(p.degree(), Some(48));
    }

    #[test]
    fn cyclotomic_divides_x_pow_minus_one() {
        for n in 1..=50 {
            let phi = cyclotomic_polynomial(n);
            assert!(phi.is_monic());
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize), "n = {n}");
            let (_, r) = CycPoly::x_pow_minus_one(n as usize).div_rem_monic(&phi);
            assert!(r.is_zero(), "Phi_{n} does not divide x^{n} - 1");
        }
    }
}
