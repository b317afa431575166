//! The weighted moment integrals
//!
//! ```text
//! alpha_{r,k}(c) = int_{-1}^{1} (c t + 1)^k t^r p_c(t) dt
//! beta_{r,k}(c)  = int_{-1}^{1} (c t + 1)^k t^r C(t) dt
//!                  + (-1)^r (1-c)^k p_c(-1)/m_inf + (1+c)^k p_c(1)/m_0
//! ```
//!
//! where `C` is half the sum term. Exact values are `LogScalar`s: a rational
//! plus a rational multiple of `ln((1+c)/(1-c))`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::scalar::{factorial, rat_powi, rat_to_f64};
use crate::algebra::{format_rat, rat, Real};
use crate::model::Admissible;
use crate::quadrature::{integrate, Estimate, QuadOptions};
use crate::{Error, Rat, RatPoly, Result};

/// `rat_part + log_coeff * ln((1+c)/(1-c))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogScalar {
    pub rat_part: Rat,
    pub log_coeff: Rat,
    pub c: Rat,
}

impl LogScalar {
    pub fn rational(r: Rat, c: &Rat) -> Self {
        LogScalar { rat_part: r, log_coeff: Rat::zero(), c: c.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.log_coeff.is_zero()
    }

    /// The rational value, or an error naming `what` if a log part is present.
    pub fn to_rat(&self, what: &str) -> Result<Rat> {
        if self.is_rational() {
            Ok(self.rat_part.clone())
        } else {
            Err(Error::log_residue(what, &self.log_coeff))
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        LogScalar { rat_part: &self.rat_part * k, log_coeff: &self.log_coeff * k, c: self.c.clone() }
    }

    /// Product, defined when at least one side is rational.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.is_rational() {
            Some(other.scale(&self.rat_part))
        } else if other.is_rational() {
            Some(self.scale(&other.rat_part))
        } else {
            None
        }
    }

    pub fn to_real<R: Real>(&self, prec: u32) -> R {
        let r = R::from_rat(&self.rat_part, prec);
        if self.is_rational() {
            return r;
        }
        let one = Rat::one();
        let ratio = (&one + &self.c) / (&one - &self.c);
        r + R::from_rat(&self.log_coeff, prec) * R::from_rat(&ratio, prec).ln()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            rat_to_f64(&self.rat_part)
        } else {
            let c = rat_to_f64(&self.c);
            rat_to_f64(&self.rat_part) + rat_to_f64(&self.log_coeff) * ((1.0 + c) / (1.0 - c)).ln()
        }
    }

    fn same_point(&self, other: &Self) {
        assert_eq!(self.c, other.c, "LogScalar values taken at different c");
    }
}

impl Add for LogScalar {
    type Output = LogScalar;
    fn add(self, rhs: LogScalar) -> LogScalar {
        self.same_point(&rhs);
        LogScalar { rat_part: self.rat_part + rhs.rat_part, log_coeff: self.log_coeff + rhs.log_coeff, c: self.c }
    }
}

impl Sub for LogScalar {
    type Output = LogScalar;
    fn sub(self, rhs: LogScalar) -> LogScalar {
        self + (-rhs)
    }
}

impl Neg for LogScalar {
    type Output = LogScalar;
    fn neg(self) -> LogScalar {
        LogScalar { rat_part: -self.rat_part, log_coeff: -self.log_coeff, c: self.c }
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", format_rat(&self.rat_part))
        } else {
            write!(
                f,
                "{} + {}*ln((1+c)/(1-c)) at c={}",
                format_rat(&self.rat_part),
                format_rat(&self.log_coeff),
                format_rat(&self.c)
            )
        }
    }
}

pub(crate) fn check_c(c: &Rat) -> Result<()> {
    if c.abs() >= Rat::one() {
        return Err(Error::Domain(format!("c = {} must lie in (-1, 1)", format_rat(c))));
    }
    Ok(())
}

/// `int_{-1}^{1} (c t + 1)^k t^r g(t) dt` exactly.
pub fn weighted_integral(g: &RatPoly, c: &Rat, r: u32, k: i64) -> Result<LogScalar> {
    check_c(c)?;
    let h = g.shift(r as usize);
    let (lo, hi) = (rat(-1), rat(1));
    if c.is_zero() {
        return Ok(LogScalar::rational(h.definite_integral(&lo, &hi), c));
    }
    if k >= 0 {
        let w = RatPoly::linear(c.clone(), Rat::one()).pow(k as u32);
        return Ok(LogScalar::rational((&w * &h).definite_integral(&lo, &hi), c));
    }
    // u = c t + 1, dt = du / c, t = (u - 1) / c
    let inv = c.recip();
    let hu = h.compose_affine(&inv, &-inv.clone());
    let (ua, ub) = (Rat::one() - c, Rat::one() + c);
    let mut rat_part = Rat::zero();
    let mut log_coeff = Rat::zero();
    for (j, hj) in hu.coeffs().iter().enumerate() {
        if hj.is_zero() {
            continue;
        }
        let e = k + j as i64 + 1;
        if e == 0 {
            log_coeff += hj;
        } else {
            let e_rat = rat(e);
            rat_part += hj * (rat_powi(&ub, e) - rat_powi(&ua, e)) / e_rat;
        }
    }
    Ok(LogScalar { rat_part: rat_part * &inv, log_coeff: log_coeff * &inv, c: c.clone() })
}

pub fn alpha(setup: &Admissible, c: &Rat, r: u32, k: i64) -> Result<LogScalar> {
    weighted_integral(setup.moment_poly(), c, r, k)
}

/// The orbifold-weighted endpoint contribution to `beta_{r,k}`.
pub fn beta_boundary(setup: &Admissible, c: &Rat, r: u32, k: i64) -> Rat {
    let pc = setup.moment_poly();
    let one = Rat::one();
    let sign = if r.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let minus_end = pc.eval(&rat(-1));
    let plus_end = pc.eval(&one);
    let mut b = Rat::zero();
    if !minus_end.is_zero() {
        b += sign * rat_powi(&(&one - c), k) * minus_end / setup.minf();
    }
    if !plus_end.is_zero() {
        b += rat_powi(&(&one + c), k) * plus_end / setup.m0();
    }
    b
}

pub fn beta(setup: &Admissible, c: &Rat, r: u32, k: i64) -> Result<LogScalar> {
    let interior = weighted_integral(&setup.curvature_poly(), c, r, k)?;
    Ok(interior + LogScalar::rational(beta_boundary(setup, c, r, k), c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Alpha,
    Beta,
}

/// Quadrature evaluation for arbitrary rational `k`, as a cross-check of the
/// exact path and for non-integer exponents.
pub fn numeric_integral<R: Real>(
    setup: &Admissible,
    which: Which,
    c: &R,
    r: u32,
    k: &Rat,
    opts: &QuadOptions,
) -> Result<Estimate<R>> {
    let prec = opts.precision;
    let one = R::from_f64_prec(1.0, prec);
    if c.abs() >= one {
        return Err(Error::Domain("numeric c must lie in (-1, 1)".into()));
    }
    let g = match which {
        Which::Alpha => setup.moment_poly().clone(),
        Which::Beta => setup.curvature_poly(),
    };
    let g_real: Vec<R> = g.coeffs().iter().map(|q| R::from_rat(q, prec)).collect();
    let k_int = if k.is_integer() { k.to_integer().to_i64() } else { None };
    let k_real = R::from_rat(k, prec);
    let power = |base: &R| -> R {
        match k_int {
            Some(n) => base.powi(n),
            None => (k_real.clone() * base.ln()).exp(),
        }
    };
    let integrand = |t: &R| -> R {
        let mut gv = R::zero();
        for co in g_real.iter().rev() {
            gv = gv * t.clone() + co.clone();
        }
        let base = c.clone() * t.clone() + one.clone();
        power(&base) * t.powi(r as i64) * gv
    };
    let a = R::from_f64_prec(-1.0, prec);
    let mut est = integrate(&integrand, &a, &one, opts)?;
    if which == Which::Beta {
        let pc = setup.moment_poly();
        let minus_end = pc.eval(&rat(-1));
        let plus_end = pc.eval(&rat(1));
        let sign = if r.is_multiple_of(2) { one.clone() } else { -one.clone() };
        let mut b = R::zero();
        if !minus_end.is_zero() {
            b = b + sign * power(&(one.clone() - c.clone())) * R::from_rat(&(minus_end / setup.minf()), prec);
        }
        if !plus_end.is_zero() {
            b = b + power(&(one.clone() + c.clone())) * R::from_rat(&(plus_end / setup.m0()), prec);
        }
        est.value = est.value + b;
    }
    Ok(est)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `c -> 1` from below.
    Plus,
    /// `c -> -1` from above.
    Minus,
}

/// `alpha_{0,-k}` or `beta_{0,-l}` behaves like `constant / (1 -+ c)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticLead {
    pub side: Side,
    pub exponent: i64,
    pub constant: Rat,
}

fn fact(n: i64) -> Rat {
    Rat::from_integer(factorial(n.max(0) as u64))
}

pub fn asymptotic_lead(setup: &Admissible, which: Which, order: i64, side: Side) -> Result<AsymptoticLead> {
    let m = setup.m() as i64;
    let fp = setup.factor_polys()?;
    let (d, p_red, q_red, end, far_weight) = match side {
        Side::Plus => (setup.d0() as i64, &fp.p0, fp.q0.as_ref(), rat(-1), setup.minf()),
        Side::Minus => (setup.dinf() as i64, &fp.pinf, fp.qinf.as_ref(), rat(1), setup.m0()),
    };
    match which {
        Which::Alpha => {
            let k = order;
            if k < m + 1 {
                return Err(Error::Domain(format!("alpha asymptotics need k >= m+1 = {}", m + 1)));
            }
            let constant = fact(k - 2 - d) * fact(d) * p_red.eval(&end) / fact(k - 1);
            Ok(AsymptoticLead { side, exponent: k - 1 - d, constant })
        }
        Which::Beta => {
            let l = order;
            if l < m {
                return Err(Error::Domain(format!("beta asymptotics need l >= m = {m}")));
            }
            if d == 0 {
                let constant = setup.moment_poly().eval(&end) / far_weight;
                return Ok(AsymptoticLead { side, exponent: l, constant });
            }
            let q = q_red.expect("reduced curvature polynomial exists when the end is blown down");
            let constant = fact(l - 1 - d) * fact(d - 1) * q.eval(&end) / fact(l - 1);
            Ok(AsymptoticLead { side, exponent: l - d, constant })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, BigFloat};
    use crate::model::{AdmissibleSetup, BaseFactor};

    fn s1() -> Admissible {
        AdmissibleSetup::new(
            vec![BaseFactor::new(1, rat(-2), ratio(4, 5)), BaseFactor::new(1, rat(2), ratio(-4, 5))],
            0,
            0,
        )
        .validate()
        .unwrap()
    }

    fn s4() -> Admissible {
        AdmissibleSetup::new(vec![BaseFactor::new(1, rat(2), ratio(1, 2))], 3, 1).validate().unwrap()
    }

    #[test]
    fn alpha_examples() {
        let s = s1();
        for c in [ratio(0, 1), ratio(1, 3), ratio(-7, 8)] {
            assert_eq!(alpha(&s, &c, 0, 0).unwrap().to_rat("a").unwrap(), ratio(118, 75));
        }
        assert_eq!(alpha(&s, &rat(0), 1, -5).unwrap().rat_part, rat(0));
    }

    #[test]
    fn beta_examples() {
        let s = s1();
        for k in [-5, -1, 0, 3] {
            assert_eq!(beta(&s, &rat(0), 0, k).unwrap().to_rat("b").unwrap(), ratio(-142, 25));
            assert_eq!(beta(&s, &rat(0), 1, k).unwrap().to_rat("b").unwrap(), rat(0));
        }
        let s = s4();
        for c in [ratio(1, 3), ratio(-1, 2)] {
            assert_eq!(beta_boundary(&s, &c, 0, -7), rat(0));
        }
    }

    #[test]
    fn log_part_appears_only_at_exponent_minus_one() {
        let s = s1();
        let c = ratio(1, 2);
        // k = -1, r = 0: h(u) has a constant term, so a log appears
        let v = alpha(&s, &c, 0, -1).unwrap();
        assert!(!v.is_rational());
        // k = -4, r = 0: exponents k + j + 1 for j <= 2 never vanish
        assert!(alpha(&s, &c, 0, -4).unwrap().is_rational());
        assert!(matches!(v.to_rat("alpha"), Err(Error::LogResidue { .. })));
    }

    #[test]
    fn exact_matches_quadrature_to_thirty_digits() {
        let s = s1();
        let c = ratio(1, 2);
        let exact = alpha(&s, &c, 0, -4).unwrap();
        let opts = QuadOptions::default();
        let cf = BigFloat::from_rat(&c, opts.precision);
        let est = numeric_integral::<BigFloat>(&s, Which::Alpha, &cf, 0, &rat(-4), &opts).unwrap();
        let diff = (est.value.clone() - exact.to_real::<BigFloat>(opts.precision)).abs();
        let rel = diff.to_f64() / exact.to_f64().abs();
        assert!(rel < 1e-30, "{rel}");
        assert!(diff.to_f64() <= est.error.to_f64() * 10.0 + 1e-70);
        // log-bearing value is also reproduced
        let exact = beta(&s, &c, 1, -1).unwrap();
        let est = numeric_integral::<BigFloat>(&s, Which::Beta, &cf, 1, &rat(-1), &opts).unwrap();
        let diff = (est.value - exact.to_real::<BigFloat>(opts.precision)).abs();
        assert!(diff.to_f64() < 1e-40);
    }

    #[test]
    fn numeric_fractional_and_near_boundary() {
        let s = s1();
        let opts = QuadOptions::with_precision(128);
        let cf = BigFloat::from_rat(&ratio(1, 2), 128);
        let v = numeric_integral::<BigFloat>(&s, Which::Alpha, &cf, 0, &ratio(-7, 2), &opts).unwrap();
        assert!(v.value.to_f64().is_finite() && v.value.to_f64() > 0.0);
        let c = ratio(999, 1000);
        let cf = BigFloat::from_rat(&c, 128);
        let v = numeric_integral::<BigFloat>(&s, Which::Alpha, &cf, 0, &rat(-4), &opts).unwrap();
        let exact = alpha(&s, &c, 0, -4).unwrap().to_f64();
        assert!(v.panels > 1);
        assert!((v.value.to_f64() - exact).abs() / exact < 1e-15);
    }

    #[test]
    fn asymptotic_examples() {
        let lead = asymptotic_lead(&s1(), Which::Beta, 3, Side::Plus).unwrap();
        assert_eq!((lead.exponent, lead.constant), (3, ratio(9, 25)));
        let lead = asymptotic_lead(&s4(), Which::Alpha, 7, Side::Plus).unwrap();
        assert_eq!((lead.exponent, lead.constant), (3, ratio(1, 60)));
        let lead = asymptotic_lead(&s1(), Which::Alpha, 4, Side::Minus).unwrap();
        assert_eq!((lead.exponent, lead.constant), (3, ratio(3, 25)));
        assert!(asymptotic_lead(&s1(), Which::Alpha, 3, Side::Plus).is_err());
    }
}
