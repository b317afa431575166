//! Admissible data and the moment-polynomial family derived from it.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{rat, Poly};
use crate::{Rat, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("factor list is empty")]
    NoFactors,
    #[error("factor {0}: dimension must be at least 1")]
    ZeroDimension(usize),
    #[error("factor {0}: x out of range (need 0 < |x| < 1)")]
    XOutOfRange(usize),
    #[error("orbifold orders must be at least 1")]
    ZeroOrbifoldOrder,
    #[error("orbifold orders require d0=dinf=0")]
    OrbifoldWithBlowDown,
    #[error("polynomial division expected to be exact left a remainder in {0}")]
    InexactFactor(&'static str),
}

/// Serde adapter writing rationals as `"p/q"` strings. Integers are also
/// accepted on input.
pub mod rat_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::algebra::{format_rat, parse_rat};
    use crate::Rat;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rat(&t).map_err(de::Error::custom),
            Raw::Int(n) => Ok(crate::algebra::rat(n)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseFactor {
    pub d: u32,
    #[serde(with = "rat_serde")]
    pub s: Rat,
    #[serde(with = "rat_serde")]
    pub x: Rat,
}

impl BaseFactor {
    pub fn new(d: u32, s: Rat, x: Rat) -> Self {
        BaseFactor { d, s, x }
    }
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissibleSetup {
    pub factors: Vec<BaseFactor>,
    #[serde(default)]
    pub d0: u32,
    #[serde(default)]
    pub dinf: u32,
    #[serde(default = "one")]
    pub m0: u32,
    #[serde(default = "one")]
    pub minf: u32,
}

impl AdmissibleSetup {
    pub fn new(factors: Vec<BaseFactor>, d0: u32, dinf: u32) -> Self {
        AdmissibleSetup { factors, d0, dinf, m0: 1, minf: 1 }
    }

    pub fn validate(&self) -> Result<Admissible, ModelError> {
        Admissible::new(self.clone())
    }
}

/// Which end of `[-1, 1]` a synthetic factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorRole {
    Base(usize),
    Zero,
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub d: u32,
    pub s: Rat,
    pub x: Rat,
    pub role: FactorRole,
}

impl Factor {
    /// `1 + x t`
    pub fn linear(&self) -> RatPoly {
        Poly::linear(self.x.clone(), Rat::one())
    }
}

/// Validated setup with its derived polynomials cached.
#[derive(Debug, Clone)]
pub struct Admissible {
    setup: AdmissibleSetup,
    factors: Vec<Factor>,
    m: u32,
    moment: RatPoly,
    sum_term: RatPoly,
}

impl Admissible {
    pub fn new(setup: AdmissibleSetup) -> Result<Self, ModelError> {
        if setup.factors.is_empty() {
            return Err(ModelError::NoFactors);
        }
        for (i, f) in setup.factors.iter().enumerate() {
            if f.d == 0 {
                return Err(ModelError::ZeroDimension(i));
            }
            if f.x.is_zero() || f.x.abs() >= Rat::one() {
                return Err(ModelError::XOutOfRange(i));
            }
        }
        if setup.m0 == 0 || setup.minf == 0 {
            return Err(ModelError::ZeroOrbifoldOrder);
        }
        if (setup.m0, setup.minf) != (1, 1) && (setup.d0 > 0 || setup.dinf > 0) {
            return Err(ModelError::OrbifoldWithBlowDown);
        }
        let mut factors: Vec<Factor> = setup
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| Factor { d: f.d, s: f.s.clone(), x: f.x.clone(), role: FactorRole::Base(i) })
            .collect();
        if setup.d0 > 0 {
            let d = setup.d0;
            factors.push(Factor { d, s: rat(d as i64 + 1), x: rat(1), role: FactorRole::Zero });
        }
        if setup.dinf > 0 {
            let d = setup.dinf;
            factors.push(Factor { d, s: rat(-(d as i64) - 1), x: rat(-1), role: FactorRole::Infinity });
        }
        let m = factors.iter().map(|f| f.d).sum::<u32>() + 1;
        let moment = factors
            .iter()
            .fold(RatPoly::one(), |acc, f| &acc * &f.linear().pow(f.d));
        let mut sum_term = RatPoly::zero();
        for f in &factors {
            let quotient = moment
                .exact_div(&f.linear())
                .map_err(|_| ModelError::InexactFactor("sum term"))?;
            let k = rat(2 * f.d as i64) * &f.x * &f.s;
            sum_term = &sum_term + &quotient.scale(&k);
        }
        Ok(Admissible { setup, factors, m, moment, sum_term })
    }

    pub fn setup(&self) -> &AdmissibleSetup {
        &self.setup
    }

    /// Base factors followed by the synthetic blow-down factors.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d0(&self) -> u32 {
        self.setup.d0
    }

    pub fn dinf(&self) -> u32 {
        self.setup.dinf
    }

    /// Orbifold weight at the `t = 1` end.
    pub fn m0(&self) -> Rat {
        rat(self.setup.m0 as i64)
    }

    /// Orbifold weight at the `t = -1` end.
    pub fn minf(&self) -> Rat {
        rat(self.setup.minf as i64)
    }

    /// `p_c(t)`, the product of `(1 + x_a t)^{d_a}`.
    pub fn moment_poly(&self) -> &RatPoly {
        &self.moment
    }

    /// `p_c(t) * sum_a 2 x_a d_a s_a / (1 + x_a t)`.
    pub fn sum_term_poly(&self) -> &RatPoly {
        &self.sum_term
    }

    /// Half the sum term: the integrand weight of the beta integrals.
    pub fn curvature_poly(&self) -> RatPoly {
        self.sum_term.scale(&Rat::new(1.into(), 2.into()))
    }

    pub fn factor_polys(&self) -> Result<FactorPolys, ModelError> {
        let plus = Poly::linear(rat(1), rat(1));
        let minus = Poly::linear(rat(-1), rat(1));
        let p0 = self
            .moment
            .exact_div(&plus.pow(self.d0()))
            .map_err(|_| ModelError::InexactFactor("p0"))?;
        let pinf = self
            .moment
            .exact_div(&minus.pow(self.dinf()))
            .map_err(|_| ModelError::InexactFactor("pinf"))?;
        let curv = self.curvature_poly();
        let q0 = if self.d0() > 0 {
            Some(curv.exact_div(&plus.pow(self.d0() - 1)).map_err(|_| ModelError::InexactFactor("q0"))?)
        } else {
            None
        };
        let qinf = if self.dinf() > 0 {
            Some(curv.exact_div(&minus.pow(self.dinf() - 1)).map_err(|_| ModelError::InexactFactor("qinf"))?)
        } else {
            None
        };
        Ok(FactorPolys { p0, pinf, q0, qinf })
    }

    pub fn theorem_hypotheses(&self, p: &Rat) -> Hypotheses {
        let nonneg_base = self.setup.factors.iter().all(|f| !(&f.x * &f.s).is_negative());
        let bound = (self.m + 1).max(2 * self.d0() + 2).max(2 * self.dinf() + 2);
        Hypotheses { nonneg_base, p_ok: p > &rat(bound as i64) }
    }

    /// The weight used for constant scalar curvature Sasaki metrics.
    pub fn default_weight(&self) -> Rat {
        rat(self.m as i64 + 2)
    }
}

/// `p0 = p_c / (1+t)^{d0}`, `pinf = p_c / (1-t)^{dinf}` and the matching
/// reductions of the curvature polynomial near each end.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPolys {
    pub p0: RatPoly,
    pub pinf: RatPoly,
    pub q0: Option<RatPoly>,
    pub qinf: Option<RatPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// Every base factor has nonnegative scalar curvature, i.e. `x_a s_a >= 0`.
    pub nonneg_base: bool,
    pub p_ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    pub(crate) fn s1() -> Admissible {
        AdmissibleSetup::new(
            vec![BaseFactor::new(1, rat(-2), ratio(4, 5)), BaseFactor::new(1, rat(2), ratio(-4, 5))],
            0,
            0,
        )
        .validate()
        .unwrap()
    }

    fn s4(x: Rat) -> Admissible {
        AdmissibleSetup::new(vec![BaseFactor::new(1, rat(2), x)], 3, 1).validate().unwrap()
    }

    fn lin(a: Rat, b: Rat) -> RatPoly {
        Poly::linear(a, b)
    }

    #[test]
    fn s1_moment_and_sum_term() {
        let s = s1();
        assert_eq!(s.m(), 3);
        assert_eq!(s.moment_poly(), &Poly::new(vec![rat(1), rat(0), ratio(-16, 25)]));
        assert_eq!(s.sum_term_poly(), &Poly::constant(ratio(-32, 5)));
        let fp = s.factor_polys().unwrap();
        assert!(fp.q0.is_none() && fp.qinf.is_none());
    }

    #[test]
    fn s4_factor_polys() {
        let s = s4(ratio(1, 2));
        assert_eq!(s.m(), 6);
        let half = lin(ratio(1, 2), rat(1));
        let expected = &(&half * &lin(rat(1), rat(1)).pow(3)) * &lin(rat(-1), rat(1));
        assert_eq!(s.moment_poly(), &expected);
        assert_eq!(s.moment_poly().degree(), Some(5));
        let fp = s.factor_polys().unwrap();
        assert_eq!(fp.p0, &half * &lin(rat(-1), rat(1)));
        assert_eq!(fp.pinf, &half * &lin(rat(1), rat(1)).pow(3));
        assert_eq!(fp.q0.as_ref().unwrap().eval(&rat(-1)), rat(12));
        assert_eq!(s.sum_term_poly().degree(), Some(4));
        // sum term = 2 (1+t)^{d0-1} q0, so it vanishes to order 2 at t = -1
        assert_eq!(s.sum_term_poly().eval(&rat(-1)), rat(0));
    }

    #[test]
    fn single_flat_factor() {
        let s = AdmissibleSetup::new(vec![BaseFactor::new(1, rat(0), ratio(1, 2))], 0, 0)
            .validate()
            .unwrap();
        assert_eq!(s.moment_poly(), &lin(ratio(1, 2), rat(1)));
        assert!(s.sum_term_poly().is_zero());
    }

    #[test]
    fn validation_errors_by_name() {
        let bad_x = AdmissibleSetup::new(vec![BaseFactor::new(1, rat(1), rat(1))], 0, 0);
        let err = bad_x.validate().unwrap_err();
        assert!(err.to_string().contains("x out of range"));
        let mut orb = AdmissibleSetup::new(vec![BaseFactor::new(1, rat(1), ratio(1, 2))], 1, 0);
        orb.m0 = 2;
        let err = orb.validate().unwrap_err();
        assert_eq!(err.to_string(), "orbifold orders require d0=dinf=0");
    }

    #[test]
    fn hypotheses() {
        assert!(!s4(ratio(1, 2)).theorem_hypotheses(&rat(8)).p_ok);
        assert!(!s1().theorem_hypotheses(&rat(5)).nonneg_base);
        let s = AdmissibleSetup::new(vec![BaseFactor::new(3, rat(2), ratio(1, 2))], 0, 0)
            .validate()
            .unwrap();
        let h = s.theorem_hypotheses(&rat(6));
        assert!(h.nonneg_base && h.p_ok);
    }

    #[test]
    fn json_schema_roundtrip() {
        let text = r#"{"factors":[{"d":1,"s":"-2","x":"4/5"},{"d":1,"s":"2","x":"-4/5"}],"d0":0,"dinf":0,"m0":1,"minf":1}"#;
        let setup: AdmissibleSetup = serde_json::from_str(text).unwrap();
        assert_eq!(setup, s1().setup().clone());
        assert_eq!(serde_json::to_string(&setup).unwrap(), text);
        let bad = r#"{"factors":[{"d":1,"s":"4/0","x":"1/2"}]}"#;
        assert!(serde_json::from_str::<AdmissibleSetup>(bad).is_err());
    }
}
