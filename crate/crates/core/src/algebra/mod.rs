//! Exact polynomial algebra over the rationals, with the pieces needed for
//! certified real-root work: Sturm counting, isolation, interpolation and
//! Sylvester resultants. Numeric scalars live in [`bigfloat`].

pub mod bigfloat;
pub mod interp;
pub mod interval;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("duplicate interpolation abscissa at positions {0} and {1}")]
    DuplicateAbscissa(usize, usize),
    #[error("polynomial degree too small for this operation")]
    DegreeTooSmall,
    #[error("malformed rational {0:?}")]
    ParseRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("interval {0} does not bracket a sign change")]
    NotAnEnclosure(String),
}

pub use bigfloat::{BigFloat, Real, DEFAULT_PRECISION};
pub use interp::interpolate;
pub use interval::Interval;
pub use poly::Poly;
pub use resultant::{discriminant, resultant, ExactDiv};
pub use roots::{count_real_roots, default_refine_width, isolate_roots, refine_root, SturmChain};
pub use scalar::{format_rat, parse_rat, rat, ratio, Field, Scalar};
