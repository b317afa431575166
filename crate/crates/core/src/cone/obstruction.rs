use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::classify::is_extremal;
use super::{sign_point, ConeOptions};
use crate::algebra::scalar::{farey_points, rat_powi};
use crate::algebra::{isolate_roots, rat, refine_root, BigFloat, Interval, Poly, Real};
use crate::extremal::{futaki_obstruction, integer_weight, ObstructionKind};
use crate::model::Admissible;
use crate::sampling::interpolate_scalar;
use crate::{Rat, RatPoly, Result};

/// `Phi(c) = scale * numerator(c) / ((1 - c)^minus_exponent (1 + c)^plus_exponent)`,
/// with `numerator` primitive over the integers.
#[derive(Debug, Clone)]
pub struct ObstructionPoly {
    pub kind: ObstructionKind,
    pub p: Rat,
    pub numerator: RatPoly,
    pub minus_exponent: i64,
    pub plus_exponent: i64,
    pub scale: Rat,
    pub verified_degree: usize,
}

impl ObstructionPoly {
    pub fn identically_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Reconstructs the obstruction value at `c`.
    pub fn value_at(&self, c: &Rat) -> Rat {
        let one = Rat::one();
        &self.scale * self.numerator.eval(c)
            / (rat_powi(&(&one - c), self.minus_exponent) * rat_powi(&(&one + c), self.plus_exponent))
    }

    /// Root enclosures in the open interval `(-1, 1)`.
    pub fn roots(&self) -> Result<Vec<Interval>> {
        if self.identically_zero() {
            return Ok(Vec::new());
        }
        Ok(isolate_roots(&self.numerator, &Interval::unit_open())?)
    }
}

/// Pole-order bound: `Phi (1 - c^2)^K` is a polynomial for `K = 2p`.
pub(crate) fn clearing_bound(p: i64) -> i64 {
    2 * p
}

/// Strips every factor `(c - root)` from `poly`, returning the count.
pub(crate) fn strip_linear(poly: &mut RatPoly, root: &Rat) -> i64 {
    let mut n = 0;
    if poly.is_zero() {
        return 0;
    }
    let lin = Poly::linear(rat(1), -root.clone());
    while poly.eval(root).is_zero() {
        *poly = poly.div_rem(&lin).0;
        n += 1;
    }
    n
}

pub fn obstruction_poly(setup: &Admissible, p: &Rat, kind: ObstructionKind, opts: &ConeOptions) -> Result<ObstructionPoly> {
    let pi = integer_weight(p)?;
    let k = clearing_bound(pi);
    let sampling = opts.sampling(setup.m());
    let (raw, degree) = interpolate_scalar("obstruction numerator", &sampling, |c| {
        let v = futaki_obstruction(setup, c, p, kind)?.value.to_rat("obstruction")?;
        Ok(v * rat_powi(&(Rat::one() - c * c), k))
    })?;
    if raw.is_zero() {
        return Ok(ObstructionPoly {
            kind,
            p: p.clone(),
            numerator: raw,
            minus_exponent: 0,
            plus_exponent: 0,
            scale: Rat::zero(),
            verified_degree: degree,
        });
    }
    let mut reduced = raw;
    let minus = strip_linear(&mut reduced, &rat(1));
    let plus = strip_linear(&mut reduced, &rat(-1));
    if minus % 2 == 1 {
        // divided by (c - 1) rather than (1 - c)
        reduced = -reduced;
    }
    let (mut scale, prim) = reduced.primitive_part();
    let mut numerator = prim.to_rat();
    let sp = sign_point();
    let mut sign = numerator.eval(&sp);
    if sign.is_zero() {
        sign = farey_points(&rat(-1), &rat(1), numerator.degree().unwrap_or(0) + 2)
            .iter()
            .map(|c| numerator.eval(c))
            .find(|v| !v.is_zero())
            .unwrap_or_else(Rat::one);
    }
    if sign.is_negative() {
        numerator = -numerator;
        scale = -scale;
    }
    Ok(ObstructionPoly {
        kind,
        p: p.clone(),
        numerator,
        minus_exponent: k - minus,
        plus_exponent: k - plus,
        scale,
        verified_degree: degree,
    })
}

#[derive(Debug, Clone)]
pub struct CscRoot {
    pub enclosure: Interval,
    pub is_extremal: bool,
    /// Whether the verdict was certified against the boundary candidates,
    /// rather than only agreeing at the enclosure's rational points.
    pub certified: bool,
    pub approx: BigFloat,
}

/// Refines the enclosure to `width` and then to `2^-bits` for the float value.
pub(crate) fn approximate(poly: &RatPoly, enc: &Interval, bits: u32) -> Result<BigFloat> {
    if enc.is_point() {
        return Ok(BigFloat::from_rat(&enc.lo, bits));
    }
    let tiny = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(bits.min(400)));
    let fine = refine_root(poly, enc, &tiny)?;
    Ok(BigFloat::from_rat(&fine.midpoint(), bits))
}

/// Verdict of `is_extremal` at the enclosure's rational points, refining
/// until the endpoints and midpoint agree.
pub(crate) fn pointwise_verdict(
    setup: &Admissible,
    p: &Rat,
    poly: &RatPoly,
    enc: &Interval,
    opts: &ConeOptions,
) -> Result<(Interval, bool, bool)> {
    if enc.is_point() {
        return Ok((enc.clone(), is_extremal(setup, &enc.lo, p)?, true));
    }
    let mut cur = refine_root(poly, enc, &opts.refine_width)?;
    for _ in 0..8 {
        if cur.is_point() {
            return Ok((cur.clone(), is_extremal(setup, &cur.lo, p)?, true));
        }
        let pts = [cur.lo.clone(), cur.midpoint(), cur.hi.clone()];
        let verdicts: Vec<bool> = pts.par_iter().map(|c| is_extremal(setup, c, p)).collect::<Result<_>>()?;
        if verdicts.iter().all(|&v| v == verdicts[0]) {
            return Ok((cur, verdicts[0], false));
        }
        let w = cur.width() / rat(1 << 16);
        cur = refine_root(poly, &cur, &w)?;
    }
    let v = is_extremal(setup, &cur.midpoint(), p)?;
    Ok((cur, v, false))
}

/// CSC (or weighted CSC) rays: roots of the obstruction in `(-1, 1)`, each
/// marked with the extremality of its ray.
pub fn find_csc_rays(
    setup: &Admissible,
    p: &Rat,
    kind: ObstructionKind,
    opts: &ConeOptions,
) -> Result<(ObstructionPoly, Vec<CscRoot>)> {
    let ob = obstruction_poly(setup, p, kind, opts)?;
    let encs = ob.roots()?;
    let roots = encs
        .par_iter()
        .map(|enc| {
            let (enclosure, is_ext, exact) = pointwise_verdict(setup, p, &ob.numerator, enc, opts)?;
            let approx = approximate(&ob.numerator, &enclosure, opts.precision)?;
            Ok(CscRoot { enclosure, is_extremal: is_ext, certified: exact, approx })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ob, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
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

    fn s4(x: Rat) -> Admissible {
        AdmissibleSetup::new(vec![BaseFactor::new(1, rat(2), x)], 3, 1).validate().unwrap()
    }

    fn cubic(x: &Rat) -> RatPoly {
        let x2 = x * x;
        Poly::new(vec![
            rat(-12) * x,
            rat(24) + x + rat(13) * &x2,
            rat(-17) - rat(52) * x + &x2,
            rat(-1) + rat(15) * x + rat(28) * &x2,
        ])
    }

    fn proportional(a: &RatPoly, b: &RatPoly) -> bool {
        let (la, lb) = (a.lead().unwrap().clone(), b.lead().unwrap().clone());
        a.scale(&lb) == b.scale(&la)
    }

    #[test]
    fn s1_obstruction_has_only_root_zero() {
        let ob = obstruction_poly(&s1(), &rat(5), ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        let roots = ob.roots().unwrap();
        assert_eq!(roots.len(), 1);
        let r = refine_root(&ob.numerator, &roots[0], &ConeOptions::default().refine_width).unwrap();
        assert_eq!(r, Interval::point(rat(0)));
        // reference factor c (-2461 c^4 + 512 c^2 + 3893)
        let reference = Poly::new(vec![rat(0), rat(3893), rat(0), rat(512), rat(0), rat(-2461)]);
        assert!(proportional(&ob.numerator, &reference));
        for c in [ratio(1, 3), ratio(-5, 7)] {
            let direct = futaki_obstruction(&s1(), &c, &rat(5), ObstructionKind::Sasaki).unwrap();
            assert_eq!(ob.value_at(&c), direct.value.rat_part);
        }
    }

    #[test]
    fn weighted_family_cubic() {
        let x = ratio(1, 2);
        let ob = obstruction_poly(&s4(x.clone()), &rat(8), ObstructionKind::Weighted, &ConeOptions::default()).unwrap();
        assert!(proportional(&ob.numerator, &cubic(&x)));
        let expected = Poly::new(vec![rat(-6), ratio(111, 4), ratio(-171, 4), ratio(27, 2)]);
        assert!(proportional(&ob.numerator, &expected));
        assert!(ob.numerator.eval(&sign_point()) > rat(0));
    }

    #[test]
    fn weighted_family_x_one_seventh_root() {
        let s = s4(ratio(1, 7));
        let (ob, roots) = find_csc_rays(&s, &rat(8), ObstructionKind::Weighted, &ConeOptions::default()).unwrap();
        let quad = Poly::new(vec![rat(21), rat(-278), rat(21)]);
        assert!(proportional(&ob.numerator, &quad));
        assert_eq!(roots.len(), 1);
        let r = roots[0].approx.to_f64();
        assert!((21.0 * r * r - 278.0 * r + 21.0).abs() < 1e-9);
    }

    #[test]
    fn v1_value_at_zero() {
        let s = AdmissibleSetup::new(vec![BaseFactor::new(3, rat(2), ratio(1, 2))], 0, 0).validate().unwrap();
        let ob = obstruction_poly(&s, &rat(6), ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        assert_eq!(ob.value_at(&rat(0)), ratio(-21, 8));
    }

    #[test]
    fn s1_csc_root_is_not_extremal() {
        let (_, roots) = find_csc_rays(&s1(), &rat(5), ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(!roots[0].is_extremal);
    }
}
