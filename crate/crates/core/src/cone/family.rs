use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::obstruction::clearing_bound;
use super::{at_inner, at_outer, sign_point, strip_content, ConeOptions};
use crate::algebra::scalar::{rat_powi, simplest_between};
use crate::algebra::{count_real_roots, discriminant, format_rat, isolate_roots, rat, refine_root, Interval, Poly};
use crate::extremal::{futaki_obstruction, integer_weight, ObstructionKind};
use crate::model::{Admissible, AdmissibleSetup};
use crate::sampling::{interpolate_scalar, interpolate_vector};
use crate::{BiPoly, Error, Rat, RatPoly, Result};

/// One-parameter family obtained by varying `x` of one base factor.
#[derive(Debug, Clone)]
pub struct SetupFamily {
    pub template: AdmissibleSetup,
    pub factor: usize,
}

impl SetupFamily {
    pub fn at(&self, x: &Rat) -> Result<Admissible> {
        let mut s = self.template.clone();
        let f = s
            .factors
            .get_mut(self.factor)
            .ok_or_else(|| Error::Domain(format!("family factor index {} out of range", self.factor)))?;
        f.x = x.clone();
        Ok(s.validate()?)
    }
}

#[derive(Debug, Clone)]
pub struct FamilyRegion {
    pub lower: Interval,
    pub upper: Interval,
    pub witness: Rat,
    pub discriminant_sign: i32,
    pub roots_in_unit: usize,
}

#[derive(Debug, Clone)]
pub struct DiscriminantScan {
    pub kind: ObstructionKind,
    pub p: Rat,
    pub range: (Rat, Rat),
    /// Obstruction numerator as a polynomial in `c` with coefficients in `Q[x]`.
    pub numerator: BiPoly,
    /// Discriminant in `c` of the numerator, a polynomial in `x`.
    pub discriminant: RatPoly,
    pub discriminant_roots: Vec<Interval>,
    /// Parameter values where the root count in `(-1, 1)` can change.
    pub critical: Vec<Interval>,
    pub regions: Vec<FamilyRegion>,
}

fn sign_of(v: &Rat) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

impl DiscriminantScan {
    /// Numerator at a fixed parameter value, as a polynomial in `c`.
    pub fn numerator_at(&self, x: &Rat) -> RatPoly {
        at_inner(&self.numerator, x)
    }

    /// Discriminant sign and number of distinct roots in `(-1, 1)` at `x`.
    pub fn sample(&self, x: &Rat) -> Result<(i32, usize)> {
        let f = self.numerator_at(x);
        let n = if f.is_zero() { 0 } else { count_real_roots(&f, &Interval::unit_open())? };
        Ok((sign_of(&self.discriminant.eval(x)), n))
    }
}

/// Divides a polynomial in `c` (coefficients in `Q[x]`) by `c - r`.
fn deflate(p: &BiPoly, r: &Rat) -> BiPoly {
    let a = p.coeffs();
    let n = a.len();
    let mut out = vec![RatPoly::zero(); n - 1];
    let mut carry = RatPoly::zero();
    for k in (1..n).rev() {
        carry = &a[k] + &carry.scale(r);
        out[k - 1] = carry.clone();
    }
    Poly::new(out)
}

pub fn discriminant_scan(
    family: &SetupFamily,
    p: &Rat,
    kind: ObstructionKind,
    range: (Rat, Rat),
    opts: &ConeOptions,
) -> Result<DiscriminantScan> {
    let pi = integer_weight(p)?;
    let k = clearing_bound(pi);
    let (lo, hi) = range.clone();
    if lo >= hi {
        return Err(Error::Domain(format!("empty family range ({}, {})", format_rat(&lo), format_rat(&hi))));
    }
    let m = family.template.validate()?.m();
    let inner = opts.sampling(m);
    let outer = opts.sampling(m).in_range(lo.clone(), hi.clone());
    let (coeffs, _) = interpolate_vector("family obstruction numerator", &outer, |x| {
        let setup = family.at(x)?;
        let (poly, _) = interpolate_scalar("obstruction numerator", &inner, |c| {
            let v = futaki_obstruction(&setup, c, p, kind)?.value.to_rat("obstruction")?;
            Ok(v * rat_powi(&(Rat::one() - c * c), k))
        })?;
        Ok(poly.into_coeffs())
    })?;
    // outer variable c, coefficients in x
    let mut bi: BiPoly = Poly::new(coeffs);
    if bi.is_zero() {
        return Err(Error::Domain("family obstruction vanishes identically".into()));
    }
    for r in [rat(1), rat(-1)] {
        while at_outer(&bi, &r).is_zero() {
            bi = deflate(&bi, &r);
        }
    }
    bi = strip_content(&bi);
    let mid = simplest_between(&lo, &hi);
    if at_inner(&bi, &mid).eval(&sign_point()).is_negative() {
        bi = -bi;
    }

    let disc = if bi.degree().unwrap_or(0) >= 1 {
        let d = discriminant(&bi)?;
        let (_, prim) = d.primitive_part();
        prim.to_rat()
    } else {
        RatPoly::one()
    };
    let span = Interval::open(lo.clone(), hi.clone());
    let refine = |poly: &RatPoly| -> Result<Vec<Interval>> {
        if poly.is_zero() {
            return Ok(Vec::new());
        }
        isolate_roots(poly, &span)?
            .into_iter()
            .map(|e| refine_root(poly, &e, &opts.refine_width).map_err(Error::from))
            .collect()
    };
    let discriminant_roots = refine(&disc)?;

    let mut crit = &disc * bi.lead().expect("nonzero");
    for z in [rat(1), rat(-1)] {
        let edge = at_outer(&bi, &z);
        if !edge.is_zero() {
            crit = &crit * &edge;
        }
    }
    let crit = crit.square_free();
    let critical = refine(&crit)?;

    let mut edges = vec![Interval::point(lo.clone())];
    edges.extend(critical.iter().cloned());
    edges.push(Interval::point(hi.clone()));
    let regions = edges
        .par_windows(2)
        .map(|w| {
            let witness = simplest_between(&w[0].hi, &w[1].lo);
            let f = at_inner(&bi, &witness);
            let n = if f.is_zero() { 0 } else { count_real_roots(&f, &Interval::unit_open())? };
            Ok(FamilyRegion {
                lower: w[0].clone(),
                upper: w[1].clone(),
                discriminant_sign: sign_of(&disc.eval(&witness)),
                witness,
                roots_in_unit: n,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DiscriminantScan {
        kind,
        p: p.clone(),
        range,
        numerator: bi,
        discriminant: disc,
        discriminant_roots,
        critical,
        regions,
    })
}
