//! Exact Gaussian-rational coefficients and rational exponent helpers.

use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type Exponent = Rational64;

/// An exact complex number `re + im*i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    pub re: Rational,
    pub im: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn exp_rat(n: i64, d: i64) -> Exponent {
    Rational64::new(n, d)
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { re: Rational::zero(), im: Rational::zero() }
    }
    pub fn one() -> Self {
        Self::from_int(1)
    }
    pub fn i() -> Self {
        Coeff { re: Rational::zero(), im: Rational::one() }
    }
    pub fn from_int(n: i64) -> Self {
        Coeff { re: Rational::from_integer(BigInt::from(n)), im: Rational::zero() }
    }
    pub fn real(re: Rational) -> Self {
        Coeff { re, im: Rational::zero() }
    }
    pub fn from_exponent(e: Exponent) -> Self {
        Self::real(rat(*e.numer(), *e.denom()))
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn add(&self, o: &Coeff) -> Coeff {
        Coeff { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &Coeff) -> Coeff {
        Coeff { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    pub fn neg(&self) -> Coeff {
        Coeff { re: -&self.re, im: -&self.im }
    }
    pub fn inv(&self) -> Option<Coeff> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Coeff { re: &self.re / &n, im: -&self.im / &n })
    }
    pub fn pow_int(&self, n: i64) -> Option<Coeff> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Coeff::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            if self.im.is_one() {
                write!(f, "i")
            } else if (-&self.im).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{}*i", self.im)
            }
        } else if self.im.is_negative() {
            write!(f, "({} - {}*i)", self.re, -&self.im)
        } else {
            write!(f, "({} + {}*i)", self.re, self.im)
        }
    }
}

/// Generalized binomial coefficient `C(r, k)` for rational `r`.
pub fn binomial(r: Exponent, k: u32) -> Rational {
    let r = rat(*r.numer(), *r.denom());
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (&r - Rational::from_integer(BigInt::from(j))) / Rational::from_integer(BigInt::from(j + 1));
    }
    acc
}

pub fn exponent_floor(e: Exponent) -> i64 {
    e.floor().to_integer()
}

/// Exact `q`-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Factor a positive integer into (prime, multiplicity) pairs using trial
/// division; an unfactored cofactor is returned as a single entry.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= m && p <= limit {
        let mut count = 0;
        while (&m % &p).is_zero() {
            m = m.div_floor(&p);
            count += 1;
        }
        if count > 0 {
            out.push((p.clone(), count));
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}
