use thiserror::Error;

use crate::algebra::{format_rat, AlgebraError};
use crate::model::ModelError;
use crate::Rat;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{what} has a logarithmic part (coefficient {coeff}) where a rational value is required")]
    LogResidue { what: String, coeff: String },
    #[error("linear system for the affine scalar curvature is singular at c = {}", format_rat(.0))]
    SingularSystem(Rat),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("{what}: interpolation degree exceeded the ceiling {ceiling}")]
    DegreeCeiling { what: String, ceiling: usize },
    #[error("quadrature exhausted its budget of {panels} panels (estimated relative error {error:e})")]
    NodeBudget { panels: usize, error: f64 },
    #[error("parameter out of range: {0}")]
    Domain(String),
}

impl Error {
    /// Resource limits, as opposed to bad input or failed mathematics.
    pub fn is_ceiling(&self) -> bool {
        matches!(self, Error::DegreeCeiling { .. } | Error::NodeBudget { .. })
    }

    pub fn log_residue(what: impl Into<String>, coeff: &Rat) -> Self {
        Error::LogResidue { what: what.into(), coeff: format_rat(coeff) }
    }
}
