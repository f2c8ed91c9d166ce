//! Dense complex linear algebra substrate shared by every other module.

mod factor;
mod matrix;

pub use factor::{
    cokernel_basis, complete_to_coisometry, condition_number, hermitian_eig, inverse, is_psd,
    operator_norm, pinv, psd_factor, psd_sqrt, range_basis, rank, solve, svd,
    CoisometryCompletion, HermitianEig, PsdVerdict, Svd,
};
pub use matrix::CMatrix;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerances used throughout: PSD eigenvalue floor, singular-value
/// rank cutoff, and operator-norm residual bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    pub psd_tol: f64,
    pub rank_tol: f64,
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            psd_tol: 1e-10,
            rank_tol: 1e-10,
            residual_tol: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("psd_tol", self.psd_tol),
            ("rank_tol", self.rank_tol),
            ("residual_tol", self.residual_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Shape(format!(
                    "tolerance {name} must lie strictly between 0 and 1, got {v}"
                )));
            }
        }
        Ok(())
    }
}
