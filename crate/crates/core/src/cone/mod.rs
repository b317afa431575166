//! The two-dimensional Sasaki-Reeb subcone, parametrized by `c` in `(-1, 1)`:
//! where the extremal polynomial is positive, where the obstruction
//! vanishes, and how both move in one-parameter families.

mod classify;
mod ehf;
mod family;
mod obstruction;

pub use classify::{classify_cone, is_extremal, reduced_numerator, ConeReport, ExtremalInterval};
pub use ehf::{ehf, hs_derivative_formula, hs_derivative_identity, EhfKind, HsDerivativeCheck};
pub use family::{discriminant_scan, DiscriminantScan, FamilyRegion, SetupFamily};
pub use obstruction::{find_csc_rays, obstruction_poly, CscRoot, ObstructionPoly};

use crate::algebra::{default_refine_width, rat, DEFAULT_PRECISION};
use crate::sampling::{SamplingOptions, DEFAULT_CEILING};
use crate::Rat;

#[derive(Debug, Clone)]
pub struct ConeOptions {
    /// Interpolation degree ceiling.
    pub degree_ceiling: usize,
    /// Target width of root enclosures.
    pub refine_width: Rat,
    /// Bits for the floating approximations reported alongside enclosures.
    pub precision: u32,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions { degree_ceiling: DEFAULT_CEILING, refine_width: default_refine_width(), precision: DEFAULT_PRECISION }
    }
}

impl ConeOptions {
    pub(crate) fn sampling(&self, m: u32) -> SamplingOptions {
        SamplingOptions::for_m(m, self.degree_ceiling)
    }
}

/// `1 - 2^-20`, where obstruction numerators are normalized to be positive.
pub(crate) fn sign_point() -> Rat {
    rat(1) - Rat::new(1.into(), (1i64 << 20).into())
}

/// For a polynomial in one variable with coefficients in `Q[t]`, the
/// polynomial obtained by fixing `t`.
pub(crate) fn at_inner(p: &crate::BiPoly, c: &Rat) -> crate::RatPoly {
    crate::Poly::new(p.coeffs().iter().map(|q| q.eval(c)).collect())
}

/// The coefficient ring element obtained by fixing the main variable.
pub(crate) fn at_outer(p: &crate::BiPoly, z: &Rat) -> crate::RatPoly {
    p.eval(&crate::Poly::constant(z.clone()))
}

/// Removes the gcd over `Q[c]` of the coefficients, then scales to coprime
/// integer coefficients. The overall sign is left to the caller.
pub(crate) fn strip_content(p: &crate::BiPoly) -> crate::BiPoly {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let g = p.coeffs().iter().fold(crate::RatPoly::zero(), |acc, q| acc.gcd(q));
    if g.is_zero() {
        return p.clone();
    }
    let g = g.monic();
    let divided: Vec<crate::RatPoly> = p.coeffs().iter().map(|q| q.div_rem(&g).0).collect();
    let all = divided.iter().flat_map(|q| q.coeffs().iter());
    let den = all.clone().fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let num = all.fold(num_bigint::BigInt::zero(), |acc, r| acc.gcd(&(r * Rat::from_integer(den.clone())).to_integer()));
    let k = Rat::new(den, num);
    crate::Poly::new(divided.iter().map(|q| q.scale(&k)).collect())
}
