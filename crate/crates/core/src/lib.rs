//! Extremal and constant-scalar-curvature Sasaki metrics on the Sasaki-Reeb
//! cone of admissible projective bundles, computed exactly over the
//! rationals wherever the answer is rational.

pub mod algebra;
pub mod brieskorn;
pub mod cone;
mod error;
pub mod extremal;
pub mod integrals;
pub mod model;
pub mod quadrature;
pub mod sampling;

pub use algebra::{BigFloat, Interval, Poly};
pub use error::Error;

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Univariate polynomial over the rationals.
pub type RatPoly = Poly<Rat>;
/// Bivariate polynomial: outer variable with `RatPoly` coefficients.
pub type BiPoly = Poly<RatPoly>;
/// Double-precision polynomial, for plotting and quick evaluation.
pub type FloatPoly = Poly<f64>;

pub type Result<T, E = Error> = std::result::Result<T, E>;
