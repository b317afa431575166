//! Adaptive Gauss-Legendre quadrature over any [`Real`] scalar.

use crate::algebra::Real;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct QuadOptions {
    /// Working precision in bits (ignored by `f64`).
    pub precision: u32,
    /// Nodes per panel.
    pub order: usize,
    /// Panel budget before giving up.
    pub max_panels: usize,
    /// Relative tolerance as a power of two: stop once the estimated relative
    /// error is below `2^-tol_bits`. `None` means three quarters of the precision.
    pub tol_bits: Option<u32>,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { precision: crate::algebra::DEFAULT_PRECISION, order: 40, max_panels: 4096, tol_bits: None }
    }
}

impl QuadOptions {
    pub fn with_precision(precision: u32) -> Self {
        QuadOptions { precision, ..Self::default() }
    }

    fn tol_bits(&self) -> u32 {
        self.tol_bits.unwrap_or(self.precision * 3 / 4).min(self.precision.saturating_sub(4)).max(8)
    }
}

#[derive(Debug, Clone)]
pub struct Estimate<R> {
    pub value: R,
    /// Estimated absolute error.
    pub error: R,
    pub panels: usize,
}

impl<R: Real> Estimate<R> {
    pub fn relative_error(&self) -> f64 {
        let v = self.value.abs().to_f64();
        if v == 0.0 {
            self.error.to_f64()
        } else {
            self.error.to_f64() / v
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre<R: Real>(n: usize, prec: u32) -> Vec<(R, R)> {
    let one = R::from_f64_prec(1.0, prec);
    let two = R::from_i64(2);
    let pi = R::pi(prec);
    let eps = R::epsilon(prec);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = pi.clone() * R::from_f64_prec(i as f64 - 0.25, prec) / R::from_f64_prec(n as f64 + 0.5, prec);
        let mut x = guess.cos();
        let mut deriv = one.clone();
        for _ in 0..200 {
            // Legendre recurrence for P_n(x) and P_{n-1}(x)
            let mut p0 = one.clone();
            let mut p1 = x.clone();
            for j in 2..=n {
                let jj = R::from_i64(j as i64);
                let p2 = (R::from_i64(2 * j as i64 - 1) * x.clone() * p1.clone() - R::from_i64(j as i64 - 1) * p0) / jj;
                p0 = p1;
                p1 = p2;
            }
            deriv = R::from_i64(n as i64) * (x.clone() * p1.clone() - p0) / (x.clone() * x.clone() - one.clone());
            let dx = p1 / deriv.clone();
            x = x - dx.clone();
            if dx.abs() <= eps.clone() * R::from_i64(4) {
                break;
            }
        }
        let w = two.clone() / ((one.clone() - x.clone() * x.clone()) * deriv.clone() * deriv.clone());
        out.push((x, w));
    }
    out
}

struct Panel<R> {
    a: R,
    b: R,
    fine: R,
    left: R,
    right: R,
    err: R,
}

fn rule<R: Real>(nodes: &[(R, R)], f: &dyn Fn(&R) -> R, a: &R, b: &R) -> R {
    let half = (b.clone() - a.clone()) / R::from_i64(2);
    let mid = (b.clone() + a.clone()) / R::from_i64(2);
    let mut acc = R::zero();
    for (x, w) in nodes {
        let t = mid.clone() + half.clone() * x.clone();
        acc = acc + w.clone() * f(&t);
    }
    acc * half
}

fn make_panel<R: Real>(nodes: &[(R, R)], f: &dyn Fn(&R) -> R, a: R, b: R, coarse: R) -> Panel<R> {
    let m = (a.clone() + b.clone()) / R::from_i64(2);
    let left = rule(nodes, f, &a, &m);
    let right = rule(nodes, f, &m, &b);
    let fine = left.clone() + right.clone();
    let err = (fine.clone() - coarse).abs();
    Panel { a, b, fine, left, right, err }
}

/// Integrates `f` over `[a, b]`. The error estimate per panel is the
/// difference between one rule on the panel and the same rule on its halves.
pub fn integrate<R: Real>(f: &dyn Fn(&R) -> R, a: &R, b: &R, opts: &QuadOptions) -> Result<Estimate<R>> {
    let prec = opts.precision;
    let nodes = gauss_legendre::<R>(opts.order, prec);
    let tol = R::epsilon(opts.tol_bits() + 1);
    let round = R::epsilon(prec) * R::from_i64(opts.order as i64);
    let whole = rule(&nodes, f, a, b);
    let mut panels = vec![make_panel(&nodes, f, a.clone(), b.clone(), whole)];
    loop {
        let value = panels.iter().fold(R::zero(), |acc, p| acc + p.fine.clone());
        let magnitude = panels.iter().fold(R::zero(), |acc, p| acc + p.fine.abs());
        let err = panels.iter().fold(R::zero(), |acc, p| acc + p.err.clone()) + round.clone() * magnitude.clone();
        let scale = if value.is_zero() { magnitude.clone() } else { value.abs() };
        if err <= tol.clone() * scale.clone() || magnitude.is_zero() {
            return Ok(Estimate { value, error: err, panels: panels.len() });
        }
        if panels.len() >= opts.max_panels {
            let rel = if scale.is_zero() { f64::INFINITY } else { (err / scale).to_f64() };
            return Err(Error::NodeBudget { panels: panels.len(), error: rel });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0, R::zero()), |(bi, be), (i, p)| if p.err > be { (i, p.err.clone()) } else { (bi, be) });
        let p = panels.swap_remove(idx);
        let m = (p.a.clone() + p.b.clone()) / R::from_i64(2);
        panels.push(make_panel(&nodes, f, p.a, m.clone(), p.left));
        panels.push(make_panel(&nodes, f, m, p.b, p.right));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BigFloat;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let nodes = gauss_legendre::<f64>(5, 53);
        let s: f64 = nodes.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn f64_backend_integrates_peaked_function() {
        let f = |t: &f64| 1.0 / (0.999 * t + 1.0).powi(4);
        let est = integrate(&f, &-1.0, &1.0, &QuadOptions::with_precision(53)).unwrap();
        // closed form: [(ct+1)^-3 / (-3c)] from -1 to 1
        let c = 0.999f64;
        let exact = ((1.0 - c).powi(-3) - (1.0 + c).powi(-3)) / (3.0 * c);
        assert!((est.value - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn bigfloat_backend_reaches_high_precision() {
        let prec = 256;
        let f = |t: &BigFloat| t.exp();
        let a = BigFloat::from_f64_prec(-1.0, prec);
        let b = BigFloat::from_f64_prec(1.0, prec);
        let est = integrate(&f, &a, &b, &QuadOptions::with_precision(prec)).unwrap();
        let exact = b.exp() - a.exp();
        let diff = (est.value.clone() - exact).abs();
        assert!(diff.to_f64() < 1e-55, "{}", diff.to_f64());
        assert!(est.relative_error() < 1e-50);
    }

    #[test]
    fn budget_is_reported() {
        let f = |t: &f64| if *t > 0.1234 { 1.0 } else { 0.0 };
        let opts = QuadOptions { max_panels: 4, ..QuadOptions::with_precision(53) };
        assert!(matches!(integrate(&f, &-1.0, &1.0, &opts), Err(Error::NodeBudget { .. })));
    }
}
