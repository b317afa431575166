//! Real root counting and isolation via Sturm sequences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::scalar::rat;
use super::AlgebraError;
use crate::RatPoly;

/// Default enclosure width for [`refine_root`].
pub fn default_refine_width() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000_000i64.into())
}

fn sign(p: &RatPoly, x: &BigRational) -> i32 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of the square-free part of a nonzero polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let sf = p.square_free();
        let mut chain = vec![sf.clone(), sf.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].positive_remainder(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        Ok(SturmChain { chain })
    }

    pub fn base(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0;
        let mut count = 0;
        for q in &self.chain {
            let s = sign(q, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in the half-open interval `(a, b]`, `a <= b`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    pub fn count(&self, iv: &Interval) -> usize {
        if iv.is_empty() {
            return 0;
        }
        let base = self.base();
        if iv.lo == iv.hi {
            return usize::from(sign(base, &iv.lo) == 0);
        }
        let mut n = self.count_half_open(&iv.lo, &iv.hi);
        if !iv.lo_open && sign(base, &iv.lo) == 0 {
            n += 1;
        }
        if iv.hi_open && sign(base, &iv.hi) == 0 {
            n -= 1;
        }
        n
    }
}

/// Number of distinct real roots of `p` in `iv`.
pub fn count_real_roots(p: &RatPoly, iv: &Interval) -> Result<usize, AlgebraError> {
    Ok(SturmChain::new(p)?.count(iv))
}

/// Disjoint enclosures, in increasing order, each holding exactly one
/// distinct root of `p` in `iv`. Non-point enclosures are open intervals
/// whose endpoints are not roots and across which `p` changes sign.
pub fn isolate_roots(p: &RatPoly, iv: &Interval) -> Result<Vec<Interval>, AlgebraError> {
    let sc = SturmChain::new(p)?;
    let mut out = Vec::new();
    if iv.is_empty() {
        return Ok(out);
    }
    let base = sc.base().clone();
    if iv.lo == iv.hi {
        if sign(&base, &iv.lo) == 0 {
            out.push(Interval::point(iv.lo.clone()));
        }
        return Ok(out);
    }
    if !iv.lo_open && sign(&base, &iv.lo) == 0 {
        out.push(Interval::point(iv.lo.clone()));
    }
    isolate_half_open(&sc, &iv.lo, &iv.hi, &mut out);
    if iv.hi_open && sign(&base, &iv.hi) == 0 {
        out.pop();
    }
    Ok(out)
}

fn isolate_half_open(sc: &SturmChain, a: &BigRational, b: &BigRational, out: &mut Vec<Interval>) {
    let n = sc.count_half_open(a, b);
    if n == 0 {
        return;
    }
    let base = sc.base();
    if n == 1 {
        if sign(base, b) == 0 {
            out.push(Interval::point(b.clone()));
            return;
        }
        if sign(base, a) != 0 {
            out.push(Interval::open(a.clone(), b.clone()));
            return;
        }
        // Left endpoint is an excluded root: bisect until the enclosure
        // no longer touches it.
        let mut hi = b.clone();
        loop {
            let mid = (a + &hi) / rat(2);
            if sc.count_half_open(&mid, &hi) == 1 {
                out.push(Interval::open(mid, hi));
                return;
            }
            if sign(base, &mid) == 0 {
                out.push(Interval::point(mid));
                return;
            }
            hi = mid;
        }
    }
    let mid = (a + b) / rat(2);
    isolate_half_open(sc, a, &mid, out);
    isolate_half_open(sc, &mid, b, out);
}

/// Shrinks a single-root enclosure from [`isolate_roots`] to width at most
/// `width` by bisection on sign changes of the square-free part of `p`.
pub fn refine_root(p: &RatPoly, enc: &Interval, width: &BigRational) -> Result<Interval, AlgebraError> {
    if enc.is_point() {
        return Ok(enc.clone());
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let sf = p.square_free();
    let mut lo = enc.lo.clone();
    let mut hi = enc.hi.clone();
    let s_lo = sign(&sf, &lo);
    let s_hi = sign(&sf, &hi);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(AlgebraError::NotAnEnclosure(enc.to_string()));
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat(2);
        let s = sign(&sf, &mid);
        if s == 0 {
            return Ok(Interval::point(mid));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Interval::open(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::ratio;
    use crate::Poly;

    fn p(v: &[i64]) -> RatPoly {
        Poly::new(v.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn counts_distinct_roots() {
        // (t-1)^2 (t+1/2) t
        let q = &(&p(&[-1, 1]).pow(2) * &Poly::new(vec![ratio(1, 2), rat(1)])) * &p(&[0, 1]);
        assert_eq!(count_real_roots(&q, &Interval::closed(rat(-1), rat(1))).unwrap(), 3);
        assert_eq!(count_real_roots(&q, &Interval::open(rat(-1), rat(1))).unwrap(), 2);
        assert_eq!(count_real_roots(&q, &Interval::open(rat(0), rat(1))).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[1, 0, 1]), &Interval::open(rat(-5), rat(5))).unwrap(), 0);
        assert!(matches!(
            count_real_roots(&p(&[]), &Interval::unit_open()),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }

    #[test]
    fn isolates_and_refines_sqrt2() {
        let q = p(&[-2, 0, 1]);
        let encs = isolate_roots(&q, &Interval::open(rat(-3), rat(3))).unwrap();
        assert_eq!(encs.len(), 2);
        let r = refine_root(&q, &encs[1], &default_refine_width()).unwrap();
        assert!(r.width() <= default_refine_width());
        assert!(r.contains_f64(2f64.sqrt()));
        assert!(encs[0].hi <= encs[1].lo);
    }

    #[test]
    fn isolation_handles_roots_at_split_points() {
        // roots at 0 (a bisection midpoint) and 1/1000
        let q = &p(&[0, 1]) * &Poly::new(vec![ratio(-1, 1000), rat(1)]);
        let encs = isolate_roots(&q, &Interval::open(rat(-1), rat(1))).unwrap();
        assert_eq!(encs.len(), 2);
        assert!(encs[0].is_point());
        assert!(!encs[1].is_point());
        assert!(encs[1].contains(&ratio(1, 1000)));
        let r = refine_root(&q, &encs[1], &ratio(1, 1 << 20)).unwrap();
        assert!(r.contains(&ratio(1, 1000)));
    }
}
