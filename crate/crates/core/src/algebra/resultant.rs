//! Sylvester resultants with fraction-free (Bareiss) elimination.

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::{Field, Scalar};
use super::AlgebraError;
use crate::Poly;

/// Division known in advance to be exact.
pub trait ExactDiv: Sized {
    fn exact_quotient(&self, d: &Self) -> Result<Self, AlgebraError>;
}

impl ExactDiv for BigRational {
    fn exact_quotient(&self, d: &Self) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self / d)
    }
}

impl<T: Field> ExactDiv for Poly<T> {
    fn exact_quotient(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.exact_div(d)
    }
}

pub fn sylvester_matrix<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Vec<Vec<T>> {
    let n = p.degree().unwrap_or(0);
    let m = q.degree().unwrap_or(0);
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![T::zero(); size];
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![T::zero(); size];
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant<T: Scalar + ExactDiv>(mut m: Vec<Vec<T>>) -> Result<T, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_quotient(&prev)?;
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// `Res(p, q)` with respect to the outer variable.
pub fn resultant<T: Scalar + ExactDiv>(p: &Poly<T>, q: &Poly<T>) -> Result<T, AlgebraError> {
    match (p.degree(), q.degree()) {
        (None, _) | (_, None) => Ok(T::zero()),
        (Some(0), Some(m)) => Ok(num_traits::pow(p.coeff(0), m)),
        (Some(n), Some(0)) => Ok(num_traits::pow(q.coeff(0), n)),
        _ => determinant(sylvester_matrix(p, q)),
    }
}

/// `(-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant<T: Scalar + ExactDiv>(p: &Poly<T>) -> Result<T, AlgebraError> {
    let n = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Err(AlgebraError::DegreeTooSmall);
    }
    let lc = p.lead().cloned().ok_or(AlgebraError::ZeroPolynomial)?;
    let r = resultant(p, &p.derivative())?.exact_quotient(&lc)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;
    use crate::{BiPoly, RatPoly};

    fn p(v: &[i64]) -> RatPoly {
        Poly::new(v.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn quadratic_discriminant() {
        // t^2 - 3t + 2 -> 9 - 8 = 1
        assert_eq!(discriminant(&p(&[2, -3, 1])).unwrap(), rat(1));
        // 2t^2 + t + 1 -> 1 - 8 = -7
        assert_eq!(discriminant(&p(&[1, 1, 2])).unwrap(), rat(-7));
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), rat(0));
        // Res(t - a, t - b) = a - b in this row convention, up to sign
        let r = resultant(&p(&[-3, 1]), &p(&[-5, 1])).unwrap();
        assert_eq!(r, rat(-2));
    }

    #[test]
    fn bivariate_resultant_matches_specialization() {
        // P(z, c) = z^2 - c, Q(z, c) = z - 1 -> Res_z = 1 - c
        let pz: BiPoly = Poly::new(vec![p(&[0, -1]), p(&[]), p(&[1])]);
        let qz: BiPoly = Poly::new(vec![p(&[-1]), p(&[1])]);
        assert_eq!(resultant(&pz, &qz).unwrap(), p(&[1, -1]));
    }
}
