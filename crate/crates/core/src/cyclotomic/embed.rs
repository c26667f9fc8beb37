//! Fixed-point evaluation of `cos(2*pi*k/n)` and `sin(2*pi*k/n)` beyond
//! double precision.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// Fixed-point number `value / 2^bits`.
#[derive(Clone, Debug)]
struct Fixed {
    value: BigInt,
    bits: u32,
}

impl Fixed {
    fn one(bits: u32) -> Self {
        Fixed { value: BigInt::one() << bits, bits }
    }

    fn mul(&self, other: &Fixed) -> Fixed {
        Fixed { value: (&self.value * &other.value) >> self.bits, bits: self.bits }
    }

    fn div_int(&self, d: i64) -> Fixed {
        Fixed { value: &self.value / BigInt::from(d), bits: self.bits }
    }
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: i64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut sum = power.clone();
    let mut k = 1i64;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// pi via Machin's formula.
fn pi(bits: u32) -> Fixed {
    let v = BigInt::from(16) * atan_inv(5, bits) - BigInt::from(4) * atan_inv(239, bits);
    Fixed { value: v, bits }
}

/// `(cos x, sin x)` by Taylor series for `|x| <= pi`.
fn cos_sin(x: &Fixed) -> (Fixed, Fixed) {
    let bits = x.bits;
    let mut cos = Fixed::one(bits);
    let mut sin = x.clone();
    let x2 = x.mul(x);
    let mut term_c = Fixed::one(bits);
    let mut term_s = x.clone();
    let mut k = 1i64;
    loop {
        term_c = term_c.mul(&x2).div_int((2 * k - 1) * (2 * k));
        term_s = term_s.mul(&x2).div_int((2 * k) * (2 * k + 1));
        if term_c.value.is_zero() && term_s.value.is_zero() {
            break;
        }
        if k % 2 == 1 {
            cos.value -= &term_c.value;
            sin.value -= &term_s.value;
        } else {
            cos.value += &term_c.value;
            sin.value += &term_s.value;
        }
        k += 1;
    }
    (cos, sin)
}

fn to_f64(value: &BigInt, bits: u32) -> f64 {
    // Keep ~64 significant bits before converting.
    let excess = value.bits().saturating_sub(64) as u32;
    let shift = excess.min(bits);
    let head = (value >> shift).to_f64().unwrap_or(f64::NAN);
    head * 2f64.powi(shift as i32 - bits as i32)
}

/// Evaluates `sum_k coeffs[k] * exp(2 pi i k / n)` with a working precision
/// of `precision` bits plus guard bits; the result is rounded once to `f64`.
pub(crate) fn embed_high_precision(n: u32, coeffs: &[BigRational], precision: u32) -> (f64, f64) {
    let bits = precision + 32;
    let pi = pi(bits);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // angle 2*pi*k/n reduced to (-pi, pi]
        let mut num = 2 * k as i64;
        let den = n as i64;
        if num > den {
            num -= 2 * den;
        }
        let angle = Fixed { value: &pi.value * BigInt::from(num) / BigInt::from(den), bits };
        let (cs, sn) = cos_sin(&angle);
        re += &cs.value * c.numer() / c.denom();
        im += &sn.value * c.numer() / c.denom();
    }
    let (re, im) = (to_f64(&re, bits), to_f64(&im, bits));
    (re, im)
}
