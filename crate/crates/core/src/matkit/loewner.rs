use serde::Serialize;

use super::dense::{check_same, Matrix};
use super::eigen::eigh;
use crate::error::{Error, Result};
use crate::real::Real;

/// Outcome of `A ≤ B`: the smallest eigenvalue of `B - A` and the
/// threshold it was compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoewnerWitness<T> {
    pub holds: bool,
    pub min_eig: T,
    pub threshold: T,
}

impl<T: Real> LoewnerWitness<T> {
    /// `min_eig + threshold`; nonnegative exactly when the relation holds.
    pub fn margin(&self) -> T {
        self.min_eig + self.threshold
    }
}

/// `A ≤ B` in the Loewner order, accepting
/// `λ_min(B - A) ≥ -tol_scale (‖A‖_∞ + ‖B‖_∞)`.
pub fn loewner_leq<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol_scale: T,
) -> Result<LoewnerWitness<T>> {
    check_same(a, b)?;
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            left: a.shape(),
            right: (a.cols(), a.rows()),
        });
    }
    let loose = T::epsilon().sqrt();
    for m in [a, b] {
        let asym = m.hermitian_asymmetry();
        let scale = m.max_abs();
        if asym > loose * scale {
            return Err(Error::NotHermitian {
                asymmetry: asym.to_f64().unwrap_or(f64::NAN),
                scale: scale.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let threshold = tol_scale * (a.inf_norm() + b.inf_norm());
    let min_eig = if a.rows() == 0 {
        T::zero()
    } else {
        eigh(&(b - a))?.min()
    };
    Ok(LoewnerWitness {
        holds: min_eig >= -threshold,
        min_eig,
        threshold,
    })
}
