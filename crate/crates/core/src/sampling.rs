//! Recovering polynomial identities from exact samples.

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::scalar::farey_points;
use crate::algebra::{interpolate, rat};
use crate::{Error, Rat, RatPoly, Result};

#[derive(Debug, Clone)]
pub struct SamplingOptions {
    pub start_degree: usize,
    pub ceiling: usize,
    pub holdout: usize,
    /// Open sampling range.
    pub lo: Rat,
    pub hi: Rat,
}

impl SamplingOptions {
    /// Degree bound `4m + 16`, doubling to `ceiling`, sampled in `(-1, 1)`.
    pub fn for_m(m: u32, ceiling: usize) -> Self {
        SamplingOptions { start_degree: 4 * m as usize + 16, ceiling, holdout: 3, lo: rat(-1), hi: rat(1) }
    }

    pub fn in_range(mut self, lo: Rat, hi: Rat) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }
}

pub const DEFAULT_CEILING: usize = 512;

/// Interpolates a vector-valued polynomial function of one variable. The
/// closure must return the same number of components at every point.
/// Returns the component polynomials and the verified degree bound.
pub fn interpolate_vector<F>(what: &str, opts: &SamplingOptions, f: F) -> Result<(Vec<RatPoly>, usize)>
where
    F: Fn(&Rat) -> Result<Vec<Rat>> + Sync,
{
    let mut degree = opts.start_degree.min(opts.ceiling);
    let mut points: Vec<Rat> = Vec::new();
    let mut values: Vec<Vec<Rat>> = Vec::new();
    loop {
        let needed = degree + 1 + opts.holdout;
        if points.len() < needed {
            let all = farey_points(&opts.lo, &opts.hi, needed);
            let fresh: Vec<Rat> = all[points.len()..].to_vec();
            let new_vals: Vec<Vec<Rat>> = fresh.par_iter().map(&f).collect::<Result<_>>()?;
            points.extend(fresh);
            values.extend(new_vals);
        }
        let width = values.iter().map(Vec::len).max().unwrap_or(0);
        let (support, holdout) = (0..degree + 1, degree + 1..needed);
        let comps: Vec<RatPoly> = (0..width)
            .into_par_iter()
            .map(|i| {
                let pts: Vec<(Rat, Rat)> = support
                    .clone()
                    .map(|j| (points[j].clone(), values[j].get(i).cloned().unwrap_or_else(Rat::zero)))
                    .collect();
                interpolate(&pts).map_err(Error::from)
            })
            .collect::<Result<_>>()?;
        let verified = holdout.clone().all(|j| {
            comps
                .iter()
                .enumerate()
                .all(|(i, p)| p.eval(&points[j]) == values[j].get(i).cloned().unwrap_or_else(Rat::zero))
        });
        if verified {
            return Ok((comps, degree));
        }
        if degree >= opts.ceiling {
            return Err(Error::DegreeCeiling { what: what.to_string(), ceiling: opts.ceiling });
        }
        degree = (degree * 2).min(opts.ceiling);
    }
}

/// Scalar version of [`interpolate_vector`].
pub fn interpolate_scalar<F>(what: &str, opts: &SamplingOptions, f: F) -> Result<(RatPoly, usize)>
where
    F: Fn(&Rat) -> Result<Rat> + Sync,
{
    let (mut v, d) = interpolate_vector(what, opts, |x| Ok(vec![f(x)?]))?;
    Ok((v.pop().unwrap_or_default(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, Poly};

    #[test]
    fn recovers_high_degree_and_doubles() {
        let target: RatPoly = Poly::new((0..40).map(|i| ratio(i * i - 7, i + 1)).collect());
        let opts = SamplingOptions { start_degree: 8, ceiling: 64, holdout: 3, lo: rat(-1), hi: rat(1) };
        let (p, deg) = interpolate_scalar("test", &opts, |x| Ok(target.eval(x))).unwrap();
        assert_eq!(p, target);
        assert_eq!(deg, 64);
    }

    #[test]
    fn reports_ceiling() {
        let opts = SamplingOptions { start_degree: 4, ceiling: 16, holdout: 3, lo: rat(-1), hi: rat(1) };
        let err = interpolate_scalar("non-polynomial", &opts, |x| Ok((x + rat(2)).recip())).unwrap_err();
        assert!(err.is_ceiling());
    }
}
