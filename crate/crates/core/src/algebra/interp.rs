use num_traits::Zero;

use super::scalar::Field;
use super::AlgebraError;
use crate::Poly;

/// Newton divided-difference interpolation through `(x_i, y_i)`.
pub fn interpolate<T: Field>(points: &[(T, T)]) -> Result<Poly<T>, AlgebraError> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i].0 == points[j].0 {
                return Err(AlgebraError::DuplicateAbscissa(i, j));
            }
        }
    }
    let xs: Vec<T> = points.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<T> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &Poly::linear(T::one(), -xs[i].clone())) + &Poly::constant(dd[i].clone());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, ratio};
    use crate::RatPoly;

    #[test]
    fn recovers_cubic() {
        let q: RatPoly = Poly::new(vec![ratio(1, 3), rat(-2), rat(0), ratio(5, 7)]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), q.eval(&rat(i)))).collect();
        assert_eq!(interpolate(&pts).unwrap(), q);
    }

    #[test]
    fn rejects_duplicates() {
        let pts = vec![(rat(1), rat(2)), (rat(1), rat(3))];
        assert!(matches!(interpolate(&pts), Err(AlgebraError::DuplicateAbscissa(0, 1))));
    }
}
