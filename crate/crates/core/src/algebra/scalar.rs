//! Coefficient traits shared by the polynomial and root-finding code.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Commutative ring element usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// A [`Scalar`] with exact (or IEEE) division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}
impl Field for BigRational {}

impl Scalar for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}
impl Field for f64 {}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace allowed).
pub fn parse_rat(text: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::ParseRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `"p/q"` text (`"p"` for integers).
pub fn format_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite double.
pub fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Integer power with negative exponents allowed (base must be nonzero then).
pub fn rat_powi(base: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rationals of small height in the open interval `(lo, hi)`, enumerated by
/// increasing denominator. Deterministic; used for interpolation nodes.
pub fn farey_points(lo: &BigRational, hi: &BigRational, count: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(count);
    let mut q: i64 = 1;
    while out.len() < count {
        let qq = BigInt::from(q);
        let start = (lo * BigRational::from_integer(qq.clone())).floor().to_integer();
        let end = (hi * BigRational::from_integer(qq.clone())).ceil().to_integer();
        let mut n = start;
        while n <= end && out.len() < count {
            if num_integer::Integer::gcd(&n, &qq).is_one() {
                let r = BigRational::new(n.clone(), qq.clone());
                if &r > lo && &r < hi {
                    out.push(r);
                }
            }
            n += 1;
        }
        q += 1;
    }
    out
}

/// The rational of smallest denominator strictly between `lo < hi`
/// (Stern-Brocot descent).
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo < hi, "empty interval");
    let fl = lo.floor();
    if &(&fl + BigRational::one()) < hi {
        // an integer lies strictly inside
        let cand = &fl + BigRational::one();
        if &cand > lo {
            let zero = BigRational::zero();
            if lo < &zero && hi > &zero {
                return zero;
            }
            // integer closest to zero inside (lo, hi)
            return if lo >= &zero { cand } else { (hi - BigRational::one()).ceil() };
        }
    }
    if &fl != lo && &(&fl + BigRational::one()) != hi && (hi - &fl) <= BigRational::one() {
        // both ends inside (fl, fl + 1): recurse on the reciprocals of the fractional parts
        let a = lo - &fl;
        let b = hi - &fl;
        return fl + simplest_between(&b.recip(), &a.recip()).recip();
    }
    if &fl == lo {
        // lo is an integer, hi <= lo + 1
        let b = hi - &fl;
        if b == BigRational::one() {
            return fl + BigRational::new(1.into(), 2.into());
        }
        // simplest in (0, b): 1/n with n = floor(1/b) + 1
        let n = b.recip().floor() + BigRational::one();
        return fl + n.recip();
    }
    // hi == fl + 1 exactly, lo in (fl, fl + 1)
    let a = lo - &fl;
    let n = (BigRational::one() - &a).recip().floor() + BigRational::one();
    fl + BigRational::one() - n.recip()
}
