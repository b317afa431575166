//! Real scalars for numerical cross-checks: `f64` and MPFR-backed `BigFloat`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

use super::scalar::{rat_to_f64, Field, Scalar};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Arbitrary-precision binary float. Binary operations carry the larger of
/// the two operand precisions, so constants built at low precision never
/// truncate a high-precision value.
#[derive(Clone)]
pub struct BigFloat(pub Float);

impl BigFloat {
    pub fn with_prec(prec: u32, x: f64) -> Self {
        BigFloat(Float::with_val(prec, x))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    fn prec2(&self, other: &Self) -> u32 {
        self.0.prec().max(other.0.prec())
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(30)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(40)))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                let p = self.prec2(&rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let p = self.prec2(rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
    };
}
bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
bin_op!(Mul, mul, *);
bin_op!(Div, div, /);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::new(2))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(2, 1))
    }
}

impl Scalar for BigFloat {
    fn from_i64(n: i64) -> Self {
        BigFloat(Float::with_val(64, n))
    }
}
impl Field for BigFloat {}

fn to_rug_rational(r: &BigRational) -> rug::Rational {
    let conv = |b: &num_bigint::BigInt| {
        rug::Integer::from_str_radix(&b.to_str_radix(16), 16).expect("hex digits from BigInt")
    };
    rug::Rational::from((conv(r.numer()), conv(r.denom())))
}

/// Ordered real field with the transcendental operations the quadrature needs.
pub trait Real: Field + PartialOrd {
    /// Correctly rounded conversion at the given precision (ignored for `f64`).
    fn from_rat(r: &BigRational, prec: u32) -> Self;
    fn from_f64_prec(x: f64, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn cos(&self) -> Self;
    fn pi(prec: u32) -> Self;
    fn powi(&self, n: i64) -> Self;
    /// Unit roundoff `2^(1 - prec)`.
    fn epsilon(prec: u32) -> Self;
    fn precision(&self) -> u32;
}

impl Real for f64 {
    fn from_rat(r: &BigRational, _prec: u32) -> Self {
        rat_to_f64(r)
    }
    fn from_f64_prec(x: f64, _prec: u32) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn pi(_prec: u32) -> Self {
        std::f64::consts::PI
    }
    fn powi(&self, n: i64) -> Self {
        f64::powi(*self, n as i32)
    }
    fn epsilon(prec: u32) -> Self {
        2f64.powi(1 - prec.min(53) as i32)
    }
    fn precision(&self) -> u32 {
        53
    }
}

impl Real for BigFloat {
    fn from_rat(r: &BigRational, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, to_rug_rational(r)))
    }
    fn from_f64_prec(x: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, x))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn pi(prec: u32) -> Self {
        BigFloat(Float::with_val(prec, rug::float::Constant::Pi))
    }
    fn powi(&self, n: i64) -> Self {
        let p = self.0.prec();
        BigFloat(Float::with_val(p, rug::ops::Pow::pow(&self.0, n)))
    }
    fn epsilon(prec: u32) -> Self {
        BigFloat(Float::with_val(prec, Float::i_exp(1, 1 - prec as i32)))
    }
    fn precision(&self) -> u32 {
        self.0.prec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::ratio;

    #[test]
    fn mixed_precision_keeps_the_larger() {
        let third = BigFloat::from_rat(&ratio(1, 3), 256);
        let s = third.clone() + BigFloat::one();
        assert_eq!(s.prec(), 256);
        let back = (s - BigFloat::one()) * BigFloat::from_i64(3);
        let err = (back - BigFloat::one()).abs();
        assert!(err < BigFloat::epsilon(250));
    }

    #[test]
    fn ln2_at_256_bits() {
        let ln2 = BigFloat::from_f64_prec(2.0, 256).ln();
        let expected = "0.6931471805599453094172321214581765680755001343602552541206800094933936219696947";
        let want = BigFloat(Float::with_val(256, Float::parse(expected).unwrap()));
        let diff = (ln2 - want).abs();
        assert!(diff.to_f64() < 1e-70);
    }
}
