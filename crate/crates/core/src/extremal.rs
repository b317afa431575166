//! Weighted extremal affine scalar curvature, the extremal polynomial and
//! the Futaki-type obstructions.

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::scalar::rat_powi;
use crate::algebra::{format_rat, rat, Poly};
use crate::integrals::{alpha, beta, check_c, LogScalar};
use crate::model::Admissible;
use crate::{Error, Rat, RatPoly, Result};

/// Integer weight required by the exact path.
pub fn integer_weight(p: &Rat) -> Result<i64> {
    match (p.is_integer(), p.to_integer().to_i64()) {
        (true, Some(n)) if n >= 2 => Ok(n),
        _ => Err(Error::Domain(format!("weight p = {} must be an integer >= 2", format_rat(p)))),
    }
}

/// `A1 z + A2`, the affine weighted scalar curvature of the extremal metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineScal {
    pub a1: Rat,
    pub a2: Rat,
    pub c: Rat,
    pub p: Rat,
}

impl AffineScal {
    pub fn poly(&self) -> RatPoly {
        Poly::linear(self.a1.clone(), self.a2.clone())
    }
}

fn rational(v: LogScalar, what: &str) -> Result<Rat> {
    v.to_rat(what)
}

/// The coefficient matrix `[[a1, a0], [a2, a1]]` and right-hand side.
struct System {
    a0: Rat,
    a1: Rat,
    a2: Rat,
    b0: Rat,
    b1: Rat,
}

impl System {
    fn new(setup: &Admissible, c: &Rat, p: i64) -> Result<Self> {
        let k = -(1 + p);
        let two = rat(2);
        Ok(System {
            a0: rational(alpha(setup, c, 0, k)?, "alpha_{0,-(1+p)}")?,
            a1: rational(alpha(setup, c, 1, k)?, "alpha_{1,-(1+p)}")?,
            a2: rational(alpha(setup, c, 2, k)?, "alpha_{2,-(1+p)}")?,
            b0: two.clone() * rational(beta(setup, c, 0, 1 - p)?, "beta_{0,1-p}")?,
            b1: two * rational(beta(setup, c, 1, 1 - p)?, "beta_{1,1-p}")?,
        })
    }

    fn det(&self) -> Rat {
        &self.a1 * &self.a1 - &self.a0 * &self.a2
    }
}

/// `alpha_1^2 - alpha_0 alpha_2` at `k = -(1+p)`; negative for `|c| < 1`.
pub fn system_determinant(setup: &Admissible, c: &Rat, p: i64) -> Result<Rat> {
    Ok(System::new(setup, c, p)?.det())
}

pub fn solve_affine(setup: &Admissible, c: &Rat, p: &Rat) -> Result<AffineScal> {
    check_c(c)?;
    let pi = integer_weight(p)?;
    let sys = System::new(setup, c, pi)?;
    let det = sys.det();
    if det.is_zero() {
        return Err(Error::SingularSystem(c.clone()));
    }
    let a1 = (&sys.b0 * &sys.a1 - &sys.b1 * &sys.a0) / &det;
    let a2 = (&sys.a1 * &sys.b1 - &sys.a2 * &sys.b0) / &det;
    Ok(AffineScal { a1, a2, c: c.clone(), p: p.clone() })
}

/// Re-checks the defining linear equations and, for `p = m + 2`, the total
/// scalar curvature identity `A1 alpha_{1,-(m+2)} + A2 alpha_{0,-(m+2)} = 2 beta_{0,-m}`.
pub fn scal_identity_check(setup: &Admissible, affine: &AffineScal) -> Result<()> {
    let c = &affine.c;
    let pi = integer_weight(&affine.p)?;
    let sys = System::new(setup, c, pi)?;
    let lhs0 = &affine.a1 * &sys.a1 + &affine.a2 * &sys.a0;
    let lhs1 = &affine.a1 * &sys.a2 + &affine.a2 * &sys.a1;
    if lhs0 != sys.b0 || lhs1 != sys.b1 {
        return Err(Error::IdentityFailed(format!("affine system residual at c = {}", format_rat(c))));
    }
    let m = setup.m() as i64;
    if pi == m + 2 {
        let k = -(m + 2);
        let total = &affine.a1 * rational(alpha(setup, c, 1, k)?, "alpha_{1,-(m+2)}")?
            + &affine.a2 * rational(alpha(setup, c, 0, k)?, "alpha_{0,-(m+2)}")?;
        let rhs = rat(2) * rational(beta(setup, c, 0, -m)?, "beta_{0,-m}")?;
        if total != rhs {
            return Err(Error::IdentityFailed(format!(
                "total scalar curvature {} != {} at c = {}",
                format_rat(&total),
                format_rat(&rhs),
                format_rat(c)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ExtremalPoly {
    pub f: RatPoly,
    pub c: Rat,
    pub p: Rat,
    pub affine: AffineScal,
}

impl ExtremalPoly {
    pub fn eval_f64(&self, z: f64) -> f64 {
        self.f.eval_f64(z)
    }
}

/// Double integral `int_{-1}^{z} Q(t) (z - t) dt` times `(cz+1)^{p-1}`, where
/// `Q = N / (ct+1)^{p+1}`, expanded in `u = ct + 1`.
fn weighted_double_integral(numer: &RatPoly, c: &Rat, p: i64, boundary_slope: &Rat) -> Result<RatPoly> {
    let one = Rat::one();
    let z_plus_1 = Poly::linear(rat(1), rat(1));
    if c.is_zero() {
        let q1 = numer.antiderivative();
        let q1 = &q1 - &Poly::constant(q1.eval(&rat(-1)));
        let q2 = q1.antiderivative();
        let q2 = &q2 - &Poly::constant(q2.eval(&rat(-1)));
        return Ok(&z_plus_1.scale(boundary_slope) + &q2);
    }
    let inv = c.recip();
    let nu = numer.compose_affine(&inv, &-inv.clone());
    let c2 = c * c;
    let u_at_minus_1 = &one - c;
    let mut w_part = RatPoly::zero();
    let mut w_minus_1 = Rat::zero();
    let mut dw_minus_1 = Rat::zero();
    for (j, nj) in nu.coeffs().iter().enumerate() {
        if nj.is_zero() {
            continue;
        }
        let e = j as i64 - p;
        if e == 0 || e == -1 {
            return Err(Error::log_residue(format!("extremal polynomial numerator term u^{j}"), nj));
        }
        let denom = &c2 * rat(e) * rat(e + 1);
        let coef = nj / &denom;
        w_part = &w_part + &Poly::monomial(coef.clone(), j);
        w_minus_1 += &coef * rat_powi(&u_at_minus_1, e + 1);
        dw_minus_1 += nj * rat_powi(&u_at_minus_1, e) / (c * rat(e));
    }
    // back to z: u = c z + 1
    let w_z = w_part.compose_affine(c, &one);
    let u_pow = Poly::linear(c.clone(), one.clone()).pow((p - 1) as u32);
    let tail = &z_plus_1.scale(&(boundary_slope - &dw_minus_1)) - &Poly::constant(w_minus_1);
    Ok(&w_z + &(&u_pow * &tail))
}

pub fn build_extremal_poly(setup: &Admissible, c: &Rat, p: &Rat) -> Result<ExtremalPoly> {
    let affine = solve_affine(setup, c, p)?;
    let pi = integer_weight(p)?;
    let pc = setup.moment_poly();
    let u = Poly::linear(c.clone(), Rat::one());
    let numer = &(setup.sum_term_poly() * &u.pow(2)) - &(&affine.poly() * pc);
    let slope =
        rat(2) * pc.eval(&rat(-1)) / (setup.minf() * rat_powi(&(Rat::one() - c), pi - 1));
    let f = weighted_double_integral(&numer, c, pi, &slope)?;
    let ep = ExtremalPoly { f, c: c.clone(), p: p.clone(), affine };
    check_endpoints(setup, &ep)?;
    Ok(ep)
}

fn check_endpoints(setup: &Admissible, ep: &ExtremalPoly) -> Result<()> {
    let pc = setup.moment_poly();
    let df = ep.f.derivative();
    let (lo, hi) = (rat(-1), rat(1));
    let checks = [
        ("F(-1) = 0", ep.f.eval(&lo), Rat::zero()),
        ("F(1) = 0", ep.f.eval(&hi), Rat::zero()),
        ("F'(-1) = 2 p_c(-1)/m_inf", df.eval(&lo), rat(2) * pc.eval(&lo) / setup.minf()),
        ("F'(1) = -2 p_c(1)/m_0", df.eval(&hi), rat(-2) * pc.eval(&hi) / setup.m0()),
    ];
    for (name, got, want) in checks {
        if got != want {
            return Err(Error::IdentityFailed(format!(
                "{name}: got {} expected {} at c = {}",
                format_rat(&got),
                format_rat(&want),
                format_rat(&ep.c)
            )));
        }
    }
    Ok(())
}

/// Recovers the weighted scalar curvature from `F` and checks it is `A1 z + A2`.
pub fn verify_ode(setup: &Admissible, ep: &ExtremalPoly) -> Result<()> {
    let p = integer_weight(&ep.p)?;
    let c = &ep.c;
    let u = Poly::linear(c.clone(), Rat::one());
    let f = &ep.f;
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let u2 = u.pow(2);
    // u^{p+1} G'' with G = F / u^{p-1}
    let g2 = &(&(&d2 * &u2) - &(&d1 * &u).scale(&(rat(2 * (p - 1)) * c)))
        + &f.scale(&(rat(p * (p - 1)) * c * c));
    let lhs = &(&u2 * setup.sum_term_poly()) - &g2;
    let rhs = &ep.affine.poly() * setup.moment_poly();
    if lhs != rhs {
        return Err(Error::IdentityFailed(format!(
            "reconstructed scalar curvature differs from A1 z + A2 at c = {}",
            format_rat(c)
        )));
    }
    Ok(())
}

/// Which vanishing condition a Futaki-type functional encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionKind {
    /// `alpha_{1,-p} beta_{0,1-p} - alpha_{0,-p} beta_{1,1-p}`: vanishes iff
    /// `A1 = c A2`. For `p = m + 2` this is the constant scalar curvature
    /// Sasaki condition.
    Sasaki,
    /// `alpha_{1,-(1+p)} beta_{0,1-p} - alpha_{0,-(1+p)} beta_{1,1-p}`:
    /// vanishes iff `A1 = 0`, i.e. the weighted metric has constant
    /// weighted scalar curvature.
    Weighted,
}

impl ObstructionKind {
    pub fn default_for(setup: &Admissible, p: &Rat) -> Self {
        if *p == setup.default_weight() {
            ObstructionKind::Sasaki
        } else {
            ObstructionKind::Weighted
        }
    }

    /// Exponent of the alpha factors.
    pub fn alpha_exponent(self, p: i64) -> i64 {
        match self {
            ObstructionKind::Sasaki => -p,
            ObstructionKind::Weighted => -(1 + p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionValue {
    pub value: LogScalar,
    pub kind: ObstructionKind,
    pub c: Rat,
    pub p: Rat,
    /// `2 value / alpha_{0,-(m+1)}`, the normalized Sasaki-Futaki invariant,
    /// when `p = m + 2` and the value is rational.
    pub normalized: Option<Rat>,
}

pub fn futaki_obstruction(setup: &Admissible, c: &Rat, p: &Rat, kind: ObstructionKind) -> Result<ObstructionValue> {
    check_c(c)?;
    let pi = integer_weight(p)?;
    let k = kind.alpha_exponent(pi);
    let a0 = alpha(setup, c, 0, k)?;
    let a1 = alpha(setup, c, 1, k)?;
    let b0 = beta(setup, c, 0, 1 - pi)?;
    let b1 = beta(setup, c, 1, 1 - pi)?;
    let prod = |x: &LogScalar, y: &LogScalar| {
        x.checked_mul(y)
            .ok_or_else(|| Error::log_residue("obstruction product of two logarithmic integrals", &x.log_coeff))
    };
    let value = prod(&a1, &b0)? - prod(&a0, &b1)?;
    let m = setup.m() as i64;
    let normalized = if pi == m + 2 && kind == ObstructionKind::Sasaki && value.is_rational() {
        let vol = alpha(setup, c, 0, -(m + 1))?.to_rat("alpha_{0,-(m+1)}")?;
        Some(rat(2) * &value.rat_part / vol)
    } else {
        None
    };
    Ok(ObstructionValue { value, kind, c: c.clone(), p: p.clone(), normalized })
}

/// `2 beta_{0,-m} / alpha_{0,-(m+1)}`, the constant a CSC Sasaki metric would have.
pub fn csc_constant(setup: &Admissible, c: &Rat) -> Result<Rat> {
    check_c(c)?;
    let m = setup.m() as i64;
    let s = beta(setup, c, 0, -m)?.to_rat("beta_{0,-m}")?;
    let v = alpha(setup, c, 0, -(m + 1))?.to_rat("alpha_{0,-(m+1)}")?;
    Ok(rat(2) * s / v)
}
