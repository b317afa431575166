use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::ehf::{ehf, EhfKind};
use super::obstruction::{find_csc_rays, CscRoot, ObstructionPoly};
use super::{at_inner, at_outer, sign_point, strip_content, ConeOptions};
use crate::algebra::scalar::{rat_powi, simplest_between};
use crate::algebra::{count_real_roots, isolate_roots, rat, ratio, refine_root, resultant, Interval, Poly};
use crate::extremal::{build_extremal_poly, integer_weight, system_determinant, ObstructionKind};
use crate::model::{Admissible, Hypotheses};
use crate::sampling::interpolate_vector;
use crate::{BiPoly, Error, Rat, RatPoly, Result};

/// `F > 0` on the open interval `(-1, 1)`.
pub fn is_extremal(setup: &Admissible, c: &Rat, p: &Rat) -> Result<bool> {
    let ep = build_extremal_poly(setup, c, p)?;
    if ep.f.eval(&Rat::zero()) <= Rat::zero() {
        return Ok(false);
    }
    Ok(count_real_roots(&ep.f, &Interval::unit_open())? == 0)
}

/// `F / ((1+z)^{d0+1} (1-z)^{dinf+1})` with the `c`-denominators cleared
/// and the content over `Q[c]` removed, as a polynomial in `z` whose
/// coefficients are polynomials in `c`. Sign fixed by `P(0, 1 - 2^-20) > 0`.
pub fn reduced_numerator(setup: &Admissible, p: &Rat, opts: &ConeOptions) -> Result<BiPoly> {
    let pi = integer_weight(p)?;
    let one = Rat::one();
    let ends = &Poly::linear(rat(1), rat(1)).pow(setup.d0() + 1) * &Poly::linear(rat(-1), rat(1)).pow(setup.dinf() + 1);
    let (comps, _) = interpolate_vector("reduced extremal numerator", &opts.sampling(setup.m()), |c| {
        let f = build_extremal_poly(setup, c, p)?.f;
        let reduced = f.exact_div(&ends)?;
        let clear = system_determinant(setup, c, pi)? * rat_powi(&(&one - c * c), 3 * pi + 1);
        Ok(reduced.scale(&clear).into_coeffs())
    })?;
    let mut bi = strip_content(&Poly::new(comps));
    let probe = at_outer(&bi, &Rat::zero());
    let sp = sign_point();
    let s = if probe.is_zero() { at_inner(&bi, &sp).eval(&Rat::zero()) } else { probe.eval(&sp) };
    if s.is_negative() {
        bi = -bi;
    }
    Ok(bi)
}

/// Interval of the extremal set. `lower` and `upper` enclose its endpoints;
/// an endpoint at `-1` or `1` is a point enclosure.
#[derive(Debug, Clone)]
pub struct ExtremalInterval {
    pub lower: Interval,
    pub upper: Interval,
    pub witness: Rat,
}

#[derive(Debug, Clone)]
pub struct ConeReport {
    pub p: Rat,
    pub kind: ObstructionKind,
    pub extremal_set: Vec<ExtremalInterval>,
    pub boundary_candidates: Vec<Interval>,
    pub csc_roots: Vec<CscRoot>,
    pub obstruction: ObstructionPoly,
    pub reduced_numerator: BiPoly,
    pub ehf_samples: Vec<(Rat, Rat)>,
    pub hypotheses: Hypotheses,
    /// Rational witness of every gap between consecutive candidates with its verdict.
    pub witnesses: Vec<(Rat, bool)>,
}

impl ConeReport {
    pub fn boundary_points(&self) -> Vec<&Interval> {
        let mut out = Vec::new();
        for iv in &self.extremal_set {
            for e in [&iv.lower, &iv.upper] {
                if !(e.is_point() && (e.lo == rat(1) || e.lo == rat(-1))) {
                    out.push(e);
                }
            }
        }
        out
    }
}

/// Candidate values of `c` where the root configuration of `P(., c)` in
/// `[-1, 1]` can change.
fn boundary_polynomial(p: &BiPoly) -> Result<RatPoly> {
    let lc = p.lead().cloned().unwrap_or_else(RatPoly::zero);
    let mut acc = lc;
    if p.degree().unwrap_or(0) >= 1 {
        let res = resultant(p, &p.derivative())?;
        if res.is_zero() {
            return Err(Error::Domain("reduced numerator has a repeated factor in z".into()));
        }
        acc = &acc * &res;
    }
    for z in [rat(-1), rat(1)] {
        let edge = at_outer(p, &z);
        if !edge.is_zero() {
            acc = &acc * &edge;
        }
    }
    Ok(acc.square_free())
}

pub fn classify_cone(setup: &Admissible, p: &Rat, kind: ObstructionKind, opts: &ConeOptions) -> Result<ConeReport> {
    let bi = reduced_numerator(setup, p, opts)?;
    let bpoly = boundary_polynomial(&bi)?;
    let candidates: Vec<Interval> = isolate_roots(&bpoly, &Interval::unit_open())?
        .into_iter()
        .map(|e| refine_root(&bpoly, &e, &opts.refine_width))
        .collect::<std::result::Result<_, _>>()?;

    // gaps (-1, c_0), (c_0, c_1), ..., (c_n, 1)
    let mut edges: Vec<Interval> = vec![Interval::point(rat(-1))];
    edges.extend(candidates.iter().cloned());
    edges.push(Interval::point(rat(1)));
    let witnesses: Vec<Rat> = edges.windows(2).map(|w| simplest_between(&w[0].hi, &w[1].lo)).collect();
    let gap_verdicts: Vec<bool> = witnesses.par_iter().map(|c| is_extremal(setup, c, p)).collect::<Result<_>>()?;
    let point_verdicts: Vec<Option<bool>> = candidates
        .par_iter()
        .map(|e| if e.is_point() { is_extremal(setup, &e.lo, p).map(Some) } else { Ok(None) })
        .collect::<Result<_>>()?;

    // sweep: an interior candidate joins its neighbours when both gaps are
    // extremal and (for rational candidates) the candidate itself is
    let mut extremal_set = Vec::new();
    let mut open: Option<(Interval, Rat)> = None;
    for (i, &ok) in gap_verdicts.iter().enumerate() {
        if ok && open.is_none() {
            open = Some((edges[i].clone(), witnesses[i].clone()));
        }
        let right = &edges[i + 1];
        let closes = match (ok, i < candidates.len()) {
            (false, _) => false,
            (true, false) => true,
            (true, true) => !gap_verdicts[i + 1] || point_verdicts[i] == Some(false),
        };
        if closes {
            let (lower, witness) = open.take().expect("interval was opened");
            extremal_set.push(ExtremalInterval { lower, upper: right.clone(), witness });
        }
    }

    let (obstruction, mut csc_roots) = find_csc_rays(setup, p, kind, opts)?;
    for root in &mut csc_roots {
        certify_root(root, &edges, &gap_verdicts);
    }

    let hk = if *p == setup.default_weight() { EhfKind::Sasaki } else { EhfKind::Weighted };
    let ehf_samples = (-7..=7)
        .map(|j| {
            let c = ratio(j, 8);
            ehf(setup, &c, hk, p).map(|h| (c, h))
        })
        .collect::<Result<_>>()?;

    Ok(ConeReport {
        p: p.clone(),
        kind,
        extremal_set,
        boundary_candidates: candidates,
        csc_roots,
        obstruction,
        reduced_numerator: bi,
        ehf_samples,
        hypotheses: setup.theorem_hypotheses(p),
        witnesses: witnesses.into_iter().zip(gap_verdicts).collect(),
    })
}

/// A root strictly inside a gap inherits the gap's verdict.
fn certify_root(root: &mut CscRoot, edges: &[Interval], gaps: &[bool]) {
    for (i, w) in edges.windows(2).enumerate() {
        let (lo, hi) = (&w[0].hi, &w[1].lo);
        let e = &root.enclosure;
        if &e.lo > lo && &e.hi < hi {
            root.is_extremal = gaps[i];
            root.certified = true;
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn s1_pointwise() {
        assert!(!is_extremal(&s1(), &rat(0), &rat(5)).unwrap());
        assert!(is_extremal(&s1(), &ratio(9, 10), &rat(5)).unwrap());
        assert!(is_extremal(&s1(), &ratio(-9, 10), &rat(5)).unwrap());
    }

    #[test]
    fn s1_cone_boundary() {
        let r = classify_cone(&s1(), &rat(5), ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        assert_eq!(r.extremal_set.len(), 2);
        assert_eq!(r.extremal_set[0].lower, Interval::point(rat(-1)));
        assert_eq!(r.extremal_set[1].upper, Interval::point(rat(1)));
        let hat = &r.extremal_set[1].lower;
        assert!(hat.lo >= ratio(41075, 100000) && hat.hi <= ratio(41076, 100000), "{hat}");
        let neg = &r.extremal_set[0].upper;
        assert_eq!(neg.lo, -hat.hi.clone());
        assert!(r.csc_roots.iter().all(|c| !c.is_extremal));
    }

    #[test]
    fn s3_has_no_extremal_rays() {
        let s = AdmissibleSetup::new(
            vec![BaseFactor::new(1, rat(-200), ratio(100, 101)), BaseFactor::new(1, rat(-100), ratio(9, 10))],
            0,
            0,
        )
        .validate()
        .unwrap();
        let r = classify_cone(&s, &rat(5), ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        assert!(r.extremal_set.is_empty());
        for c in [ratio(-9, 10), rat(0), ratio(1, 2), ratio(99, 100)] {
            assert!(!is_extremal(&s, &c, &rat(5)).unwrap());
        }
    }

    #[test]
    fn nonneg_single_factor_is_everywhere_extremal() {
        let s = AdmissibleSetup::new(vec![BaseFactor::new(1, rat(1), ratio(1, 2))], 0, 0).validate().unwrap();
        let p = rat(4);
        let r = classify_cone(&s, &p, ObstructionKind::Sasaki, &ConeOptions::default()).unwrap();
        assert_eq!(r.extremal_set.len(), 1);
        assert_eq!(r.extremal_set[0].lower, Interval::point(rat(-1)));
        assert_eq!(r.extremal_set[0].upper, Interval::point(rat(1)));
        assert!(r.csc_roots.iter().any(|c| c.is_extremal));
        for j in -31..32 {
            assert!(is_extremal(&s, &ratio(j, 32), &p).unwrap());
        }
    }
}
