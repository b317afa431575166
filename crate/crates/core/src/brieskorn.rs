//! Weights and exponents of Brieskorn-Pham polynomials `z_0^{a_0} + ... + z_n^{a_n}`.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BrieskornError {
    #[error("exponent {0} must be at least 2")]
    ExponentTooSmall(u64),
    #[error("need at least two exponents")]
    TooFewExponents,
    #[error("enumeration is implemented for n = 3 and n = 4, got {0}")]
    UnsupportedDimension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrieskornData {
    pub exponents: Vec<u64>,
    pub degree: u64,
    pub weights: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub positive: bool,
    /// `|w| - d`; the Fano index when positive.
    pub index: i64,
    /// Index is at least `d0 + 2` for the supplied `d0`.
    pub index_covers_blowdown: bool,
}

pub fn weights_from_exponents(exponents: &[u64]) -> Result<BrieskornData, BrieskornError> {
    if exponents.len() < 2 {
        return Err(BrieskornError::TooFewExponents);
    }
    if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
        return Err(BrieskornError::ExponentTooSmall(a));
    }
    let degree = exponents.iter().fold(1u64, |acc, a| acc.lcm(a));
    let weights = exponents.iter().map(|a| degree / a).collect();
    Ok(BrieskornData { exponents: exponents.to_vec(), degree, weights })
}

/// Regular iff the weights are pairwise coprime.
pub fn is_regular(bd: &BrieskornData) -> bool {
    let w = &bd.weights;
    (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1))
}

pub fn positivity_and_index(bd: &BrieskornData, d0: u32) -> Positivity {
    let index = bd.weights.iter().sum::<u64>() as i64 - bd.degree as i64;
    Positivity { positive: index > 0, index, index_covers_blowdown: index >= d0 as i64 + 2 }
}

pub const DEGREE_BOUND: u64 = 60;

/// Exponent vectors (length `n + 1`, sorted descending) of regular positive
/// Brieskorn-Pham polynomials with degree at most `bound`, ordered by degree
/// and then lexicographically descending.
pub fn enumerate_with_bound(n: usize, bound: u64) -> Result<Vec<Vec<u64>>, BrieskornError> {
    if !(3..=4).contains(&n) {
        return Err(BrieskornError::UnsupportedDimension(n));
    }
    let mut out = Vec::new();
    for d in 2..=bound {
        let divisors: Vec<u64> = (1..d).filter(|w| d % w == 0).collect();
        let mut found = Vec::new();
        let mut stack = Vec::with_capacity(n + 1);
        collect_weights(d, n + 1, &divisors, 0, &mut stack, &mut found);
        found.sort_by(|a: &Vec<u64>, b| b.cmp(a));
        found.dedup();
        out.extend(found);
    }
    Ok(out)
}

fn collect_weights(d: u64, len: usize, divisors: &[u64], from: usize, stack: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if stack.len() == len {
        if stack.iter().sum::<u64>() > d {
            let mut a: Vec<u64> = stack.iter().map(|w| d / w).collect();
            a.sort_unstable_by(|x, y| y.cmp(x));
            // lcm of the exponents must be d itself
            if a.iter().fold(1u64, |acc, x| acc.lcm(x)) == d {
                out.push(a);
            }
        }
        return;
    }
    for (i, &w) in divisors.iter().enumerate().skip(from) {
        if stack.iter().all(|&v| v.gcd(&w) == 1) {
            stack.push(w);
            collect_weights(d, len, divisors, i, stack, out);
            stack.pop();
        }
    }
}

pub fn enumerate_regular_positive(n: usize) -> Result<Vec<Vec<u64>>, BrieskornError> {
    enumerate_with_bound(n, DEGREE_BOUND)
}

/// The enumeration is unchanged when the degree bound is doubled.
pub fn bound_is_stable(n: usize) -> Result<bool, BrieskornError> {
    Ok(enumerate_with_bound(n, DEGREE_BOUND)? == enumerate_with_bound(n, 2 * DEGREE_BOUND)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        let bd = weights_from_exponents(&[6, 6, 6, 3, 2]).unwrap();
        assert_eq!((bd.degree, bd.weights.clone()), (6, vec![1, 1, 1, 2, 3]));
        assert!(is_regular(&bd));
        let pos = positivity_and_index(&bd, 0);
        assert_eq!((pos.positive, pos.index, pos.index_covers_blowdown), (true, 2, true));
        assert_eq!(weights_from_exponents(&[4, 4, 4, 2]).unwrap().weights, vec![1, 1, 1, 2]);
        let bd = weights_from_exponents(&[3, 3, 3, 3, 3]).unwrap();
        assert_eq!(positivity_and_index(&bd, 0).index, 2);
        let bd = weights_from_exponents(&[2, 2, 2]).unwrap();
        assert_eq!(positivity_and_index(&bd, 0).index, 1);
        assert_eq!(weights_from_exponents(&[2, 1]), Err(BrieskornError::ExponentTooSmall(1)));
        let bd = BrieskornData { exponents: vec![6, 3, 3, 2], degree: 6, weights: vec![1, 2, 2, 3] };
        assert!(!is_regular(&bd));
    }

    #[test]
    fn low_dimensional_lists() {
        assert_eq!(
            enumerate_regular_positive(3).unwrap(),
            vec![vec![2, 2, 2, 2], vec![3, 3, 3, 3], vec![4, 4, 4, 2], vec![6, 6, 3, 2]]
        );
        assert_eq!(
            enumerate_regular_positive(4).unwrap(),
            vec![
                vec![2, 2, 2, 2, 2],
                vec![3, 3, 3, 3, 3],
                vec![4, 4, 4, 4, 4],
                vec![4, 4, 4, 4, 2],
                vec![6, 6, 6, 6, 2],
                vec![6, 6, 6, 3, 2]
            ]
        );
        assert!(!enumerate_regular_positive(3).unwrap().contains(&vec![5, 5, 5, 5]));
        assert!(bound_is_stable(3).unwrap());
    }
}
