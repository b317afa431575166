#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sasaki_core::algebra::{rat, ratio};
use sasaki_core::model::{Admissible, AdmissibleSetup, BaseFactor};
use sasaki_core::Rat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational in `(-1, 1)` with denominator at most `max_den`.
pub fn unit_rational(rng: &mut impl Rng, max_den: i64, positive: bool) -> Rat {
    let q = rng.gen_range(2..=max_den);
    let n = rng.gen_range(1..q);
    if positive || rng.gen_bool(0.5) {
        ratio(n, q)
    } else {
        ratio(-n, q)
    }
}

/// Rational in `(-1, 1)`, possibly zero.
pub fn cone_point(rng: &mut impl Rng) -> Rat {
    let q = rng.gen_range(1..=16i64);
    ratio(rng.gen_range(-(q - 1)..q), q)
}

/// 1-3 factors, `d <= 3`, `s` in `0..=4`, `x s >= 0`, `d0, dinf <= 2`.
pub fn nonneg_setup(rng: &mut impl Rng) -> AdmissibleSetup {
    let n = rng.gen_range(1..=3);
    let factors = (0..n)
        .map(|_| {
            let s = rng.gen_range(0..=4i64);
            BaseFactor::new(rng.gen_range(1..=3), rat(s), unit_rational(rng, 9, s > 0))
        })
        .collect();
    AdmissibleSetup::new(factors, rng.gen_range(0..=2), rng.gen_range(0..=2))
}

/// Like `nonneg_setup` but with curvature of either sign.
pub fn any_setup(rng: &mut impl Rng) -> AdmissibleSetup {
    let n = rng.gen_range(1..=3);
    let factors = (0..n)
        .map(|_| BaseFactor::new(rng.gen_range(1..=3), rat(rng.gen_range(-4..=4i64)), unit_rational(rng, 9, false)))
        .collect();
    AdmissibleSetup::new(factors, rng.gen_range(0..=2), rng.gen_range(0..=2))
}

pub fn validated(s: &AdmissibleSetup) -> Admissible {
    s.validate().expect("generated setups are admissible")
}

pub fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

pub fn s1() -> Admissible {
    AdmissibleSetup::new(vec![BaseFactor::new(1, rat(-2), ratio(4, 5)), BaseFactor::new(1, rat(2), ratio(-4, 5))], 0, 0)
        .validate()
        .unwrap()
}

pub fn s3() -> Admissible {
    AdmissibleSetup::new(
        vec![BaseFactor::new(1, rat(-200), ratio(100, 101)), BaseFactor::new(1, rat(-100), ratio(9, 10))],
        0,
        0,
    )
    .validate()
    .unwrap()
}

pub fn s4(x: Rat) -> Admissible {
    AdmissibleSetup::new(vec![BaseFactor::new(1, rat(2), x)], 3, 1).validate().unwrap()
}

pub fn v1(dinf: u32) -> Admissible {
    let x = ratio(dinf as i64 + 2, dinf as i64 + 4);
    AdmissibleSetup::new(vec![BaseFactor::new(3, rat(2), x)], 0, dinf).validate().unwrap()
}
