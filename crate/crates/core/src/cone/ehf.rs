use num_traits::{One, Zero};

use super::ConeOptions;
use crate::algebra::scalar::{rat_powi, rat_to_f64};
use crate::algebra::{format_rat, rat};
use crate::extremal::integer_weight;
use crate::integrals::{alpha, beta, check_c};
use crate::model::Admissible;
use crate::sampling::interpolate_vector;
use crate::{Error, Rat, Result};

/// Einstein-Hilbert functional variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EhfKind {
    /// `beta_{0,-m}^{m+1} / alpha_{0,-(m+1)}^m`; ignores `p`.
    Sasaki,
    /// `beta_{0,2-p}^p / alpha_{0,-p}^{p-2}`.
    Weighted,
}

pub fn ehf(setup: &Admissible, c: &Rat, kind: EhfKind, p: &Rat) -> Result<Rat> {
    check_c(c)?;
    match kind {
        EhfKind::Sasaki => {
            let m = setup.m() as i64;
            let b = beta(setup, c, 0, -m)?.to_rat("beta_{0,-m}")?;
            let a = alpha(setup, c, 0, -(m + 1))?.to_rat("alpha_{0,-(m+1)}")?;
            Ok(rat_powi(&b, m + 1) / rat_powi(&a, m))
        }
        EhfKind::Weighted => {
            let pi = integer_weight(p)?;
            let b = beta(setup, c, 0, 2 - pi)?.to_rat("beta_{0,2-p}")?;
            let a = alpha(setup, c, 0, -pi)?.to_rat("alpha_{0,-p}")?;
            Ok(rat_powi(&b, pi) / rat_powi(&a, pi - 2))
        }
    }
}

/// Closed form of `H_S'(c)`.
pub fn hs_derivative_formula(setup: &Admissible, c: &Rat) -> Result<Rat> {
    check_c(c)?;
    let m = setup.m() as i64;
    let b = beta(setup, c, 0, -m)?.to_rat("beta_{0,-m}")?;
    let a = alpha(setup, c, 0, -(m + 1))?.to_rat("alpha_{0,-(m+1)}")?;
    let a0 = alpha(setup, c, 0, -(m + 2))?.to_rat("alpha_{0,-(m+2)}")?;
    let a1 = alpha(setup, c, 1, -(m + 2))?.to_rat("alpha_{1,-(m+2)}")?;
    let b0 = beta(setup, c, 0, -(m + 1))?.to_rat("beta_{0,-(m+1)}")?;
    let b1 = beta(setup, c, 1, -(m + 1))?.to_rat("beta_{1,-(m+1)}")?;
    let bracket = a1 * b0 - a0 * b1;
    Ok(rat(m * (m + 1)) * rat_powi(&b, m) * rat_powi(&a, -(m + 1)) * bracket)
}

#[derive(Debug, Clone)]
pub struct HsDerivativeCheck {
    pub c: Rat,
    pub formula: Rat,
    pub finite_difference: f64,
    /// Quotient-rule derivative of the interpolated numerator and denominator.
    pub exact: Rat,
}

const FD_STEP: f64 = 1e-8;
const FD_TOL: f64 = 1e-5;

pub fn hs_derivative_identity(setup: &Admissible, c: &Rat, opts: &ConeOptions) -> Result<HsDerivativeCheck> {
    let formula = hs_derivative_formula(setup, c)?;
    let h = Rat::new(1.into(), 100_000_000.into());
    let dummy = rat(2);
    let (up, down) = (c + &h, c - &h);
    if up >= rat(1) || down <= rat(-1) {
        return Err(Error::Domain(format!("c = {} too close to the boundary for step {FD_STEP}", format_rat(c))));
    }
    let fd = rat_to_f64(
        &((ehf(setup, &up, EhfKind::Sasaki, &dummy)? - ehf(setup, &down, EhfKind::Sasaki, &dummy)?) / (rat(2) * &h)),
    );
    let fv = rat_to_f64(&formula);
    let ok = if formula.is_zero() {
        let scale = rat_to_f64(&ehf(setup, c, EhfKind::Sasaki, &dummy)?).abs().max(1.0);
        fd.abs() <= FD_TOL * scale
    } else {
        ((fd - fv) / fv).abs() <= FD_TOL
    };
    if !ok {
        return Err(Error::IdentityFailed(format!(
            "H_S' formula {fv:e} vs finite difference {fd:e} at c = {}",
            format_rat(c)
        )));
    }

    // H_S = nb^{m+1} / (na^m (1 - c^2)^m) with nb, na polynomial in c
    let m = setup.m() as i64;
    let (polys, _) = interpolate_vector("EHF numerator and denominator", &opts.sampling(setup.m()), |t| {
        let w = rat_powi(&(Rat::one() - t * t), m);
        let b = beta(setup, t, 0, -m)?.to_rat("beta_{0,-m}")?;
        let a = alpha(setup, t, 0, -(m + 1))?.to_rat("alpha_{0,-(m+1)}")?;
        Ok(vec![b * &w, a * w])
    })?;
    let (nb, na) = (&polys[0], &polys[1]);
    let (b, db) = (nb.eval(c), nb.derivative().eval(c));
    let (a, da) = (na.eval(c), na.derivative().eval(c));
    let w = Rat::one() - c * c;
    let exact = if b.is_zero() {
        Rat::zero()
    } else {
        let h = rat_powi(&b, m + 1) / (rat_powi(&a, m) * rat_powi(&w, m));
        let log_derivative = rat(2 * m) * c / &w + rat(m + 1) * db / &b - rat(m) * da / &a;
        h * log_derivative
    };
    if exact != formula {
        return Err(Error::IdentityFailed(format!(
            "H_S' formula {} vs exact derivative {} at c = {}",
            format_rat(&formula),
            format_rat(&exact),
            format_rat(c)
        )));
    }
    Ok(HsDerivativeCheck { c: c.clone(), formula, finite_difference: fd, exact })
}
