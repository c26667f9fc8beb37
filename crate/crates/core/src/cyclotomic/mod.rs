//! Exact arithmetic in the cyclotomic field `Q(xi_n) = Q[x] / (Phi_n(x))`.
//!
//! Elements are kept in the power basis `1, xi, ..., xi^(phi(n)-1)` with
//! coefficients in lowest terms, so structural equality is field equality.
//! Galois automorphisms `xi -> xi^k` realize the star map on field elements.

mod embed;
mod linalg;
mod poly;

pub use linalg::{solve_linear, LinearSolveError};
pub use poly::{cyclotomic_polynomial, euler_phi, CycPoly};

use crate::error::{Error, Result};
use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Precomputed data for one cyclotomic order.
#[derive(Debug)]
struct Field {
    order: u32,
    degree: usize,
    phi_q: Vec<BigRational>,
    /// `xi^k` reduced to the power basis, for `degree <= k < order`.
    high_powers: Vec<Vec<BigInt>>,
}

impl Field {
    fn build(order: u32) -> Field {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.degree().unwrap();
        let phi_q = phi.coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
        let mut high_powers = Vec::new();
        // x^degree = -(lower part of phi); then multiply by x repeatedly.
        let mut cur: Vec<BigInt> = phi.coeffs()[..degree].iter().map(|c| -c).collect();
        for _ in degree..order as usize {
            high_powers.push(cur.clone());
            let top = cur.pop().unwrap();
            cur.insert(0, BigInt::zero());
            for (i, c) in phi.coeffs()[..degree].iter().enumerate() {
                cur[i] -= &top * c;
            }
        }
        Field { order, degree, phi_q, high_powers }
    }

    /// Folds `raw` by `xi^n = 1` and reduces modulo `Phi_n`.
    fn reduce(&self, raw: &[BigRational]) -> Vec<BigRational> {
        let n = self.order as usize;
        let mut folded = vec![BigRational::zero(); n];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[k % n] += c;
            }
        }
        let mut out: Vec<BigRational> = folded[..self.degree].to_vec();
        for (k, c) in folded.iter().enumerate().skip(self.degree) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.high_powers[k - self.degree]) {
                if !p.is_zero() {
                    *o += c * BigRational::from(p.clone());
                }
            }
        }
        out
    }
}

fn field(order: u32) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return Arc::clone(f);
    }
    let built = Arc::new(Field::build(order));
    cache.lock().unwrap().entry(order).or_insert(built).clone()
}

/// An exact element of `Q(xi_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    /// Reduces `sum raw[k] * xi^k` to its canonical representative.
    pub fn new(order: u32, raw: &[BigRational]) -> Result<CycNum> {
        if order < 3 {
            return Err(Error::InvalidOrder(order));
        }
        let f = field(order);
        Ok(CycNum { order, coeffs: f.reduce(raw) })
    }

    /// Convenience constructor from integer coefficients of `xi^0, xi^1, ...`.
    pub fn from_ints(order: u32, raw: &[i64]) -> CycNum {
        let raw: Vec<BigRational> = raw.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        CycNum::new(order, &raw).expect("invalid cyclotomic order")
    }

    /// `num/den` as a field element.
    pub fn from_ratio(order: u32, num: i64, den: i64) -> CycNum {
        CycNum::from_rational(order, BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(order: u32, r: BigRational) -> CycNum {
        CycNum::new(order, &[r]).expect("invalid cyclotomic order")
    }

    pub fn from_int(order: u32, v: i64) -> CycNum {
        CycNum::from_ints(order, &[v])
    }

    pub fn zero(order: u32) -> CycNum {
        CycNum::from_int(order, 0)
    }

    pub fn one(order: u32) -> CycNum {
        CycNum::from_int(order, 1)
    }

    /// `xi^k` for any integer `k`.
    pub fn xi_pow(order: u32, k: i64) -> CycNum {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![0; e + 1];
        raw[e] = 1;
        CycNum::from_ints(order, &raw)
    }

    /// Builds an element from a canonical coefficient vector, checking length.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<CycNum> {
        if order < 3 {
            return Err(Error::InvalidOrder(order));
        }
        let deg = field(order).degree;
        if coeffs.len() != deg {
            return Err(Error::Format(format!(
                "order {order} needs exactly {deg} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycNum { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_order(&self, other: &CycNum) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycNum { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(CycNum { order: self.order, coeffs: field(self.order).reduce(&raw) })
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.try_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_n`.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = field(self.order);
        let inv = poly::q_inverse_mod(&self.coeffs, &f.phi_q).ok_or(Error::DivisionByZero)?;
        CycNum::new(self.order, &inv)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The automorphism `xi -> xi^k`.
    pub fn galois(&self, k: i64) -> Result<CycNum> {
        let n = self.order as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::InvalidAutomorphism { k, n: self.order });
        }
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![BigRational::zero(); self.order as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j * k) % self.order as usize] += c;
            }
        }
        CycNum::new(self.order, &raw)
    }

    /// Complex conjugation, i.e. `galois(n - 1)`.
    pub fn complex_conj(&self) -> CycNum {
        self.galois(self.order as i64 - 1).expect("n - 1 is always a unit mod n")
    }

    pub fn is_real(&self) -> bool {
        *self == self.complex_conj()
    }

    /// `a * conj(a)`, the squared modulus as a (real) field element.
    pub fn norm_sq(&self) -> CycNum {
        self * &self.complex_conj()
    }

    /// Double-precision embedding at `xi = exp(2 pi i / n)`.
    pub fn embed(&self) -> Complex64 {
        let n = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or_else(|| ratio_to_f64(c));
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            z += Complex64::from_polar(v, angle);
        }
        z
    }

    /// Embedding evaluated with `precision` working bits (at least 53).
    /// At 53 bits this is [`CycNum::embed`].
    pub fn embed_with_precision(&self, precision: u32) -> Complex64 {
        if precision <= 53 {
            return self.embed();
        }
        let (re, im) = embed::embed_high_precision(self.order, &self.coeffs, precision);
        Complex64::new(re, im)
    }

    /// Absolute value of the embedding.
    pub fn abs(&self) -> f64 {
        self.embed().norm()
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let unit = if k == 0 {
                String::new()
            } else if k == 1 {
                "ξ".to_string()
            } else {
                format!("ξ^{k}")
            };
            match (k, mag.is_one(), mag.is_integer()) {
                (0, _, _) => write!(f, "{mag}")?,
                (_, true, _) => write!(f, "{unit}")?,
                (_, false, true) => write!(f, "{mag}{unit}")?,
                (_, false, false) => write!(f, "({mag}){unit}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({self})", self.order)
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Format(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr { order: self.order, coeffs: self.coeffs.iter().map(format_rational).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycNumRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycNum::from_coeffs(repr.order, coeffs).map_err(D::Error::custom)
    }
}
