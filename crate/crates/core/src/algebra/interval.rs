use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::{format_rat, rat, rat_to_f64};

/// Rational interval with independent openness at each end.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn point(x: BigRational) -> Self {
        Interval::closed(x.clone(), x)
    }

    /// The open cone parameter range `(-1, 1)`.
    pub fn unit_open() -> Self {
        Interval::open(rat(-1), rat(1))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && !self.lo_open && !self.hi_open
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let (lo, hi) = (rat_to_f64(&self.lo), rat_to_f64(&self.hi));
        x >= lo && x <= hi
    }

    pub fn mid_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    pub fn width_is_zero(&self) -> bool {
        self.width().is_zero()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", format_rat(&self.lo));
        }
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", format_rat(&self.lo), format_rat(&self.hi))
    }
}
