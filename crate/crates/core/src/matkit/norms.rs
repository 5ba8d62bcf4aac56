use serde::{Deserialize, Serialize};

use super::dense::Matrix;
use super::eigen::eigh;
use crate::error::{domain, Error, Result};
use crate::real::Real;

/// Unitarily invariant norm, selected by its symmetric gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    /// Schatten-1: `Σ σ_i`.
    Trace,
    /// Schatten-2: `(Σ σ_i²)^{1/2}`.
    Frobenius,
    /// Schatten-∞: `σ_1`.
    Spectral,
    /// Sum of the `k` largest singular values.
    KyFan(usize),
}

impl NormKind {
    /// Applies the gauge to singular values sorted in descending order.
    pub fn gauge<T: Real>(self, sigma: &[T]) -> Result<T> {
        match self {
            NormKind::Trace => Ok(sigma.iter().copied().sum()),
            NormKind::Frobenius => Ok(sigma.iter().map(|&s| s * s).sum::<T>().sqrt()),
            NormKind::Spectral => Ok(sigma.first().copied().unwrap_or_else(T::zero)),
            NormKind::KyFan(k) => {
                if k == 0 || k > sigma.len() {
                    return Err(domain("k", k as f64, "1..=dim"));
                }
                Ok(sigma[..k].iter().copied().sum())
            }
        }
    }
}

/// Singular values in descending order, from the eigenvalues of `X* X`
/// clamped at zero.
pub fn singular_values<T: Real>(x: &Matrix<T>) -> Result<Vec<T>> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let gram = &x.adjoint() * x;
    let e = eigh(&gram)?;
    let mut s: Vec<T> = e
        .values
        .iter()
        .rev()
        .map(|&l| l.max(T::zero()).sqrt())
        .collect();
    s.truncate(x.rows().min(x.cols()));
    Ok(s)
}

/// `|||X|||` for the chosen norm.
pub fn ui_norm<T: Real>(x: &Matrix<T>, kind: NormKind) -> Result<T> {
    kind.gauge(&singular_values(x)?)
}

/// `||| |X|^t |||`, the gauge applied to `σ_i^t`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn abs_power_norm<T: Real>(x: &Matrix<T>, t: T, kind: NormKind) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(domain("t", t, "(0, inf)"));
    }
    let s: Vec<T> = singular_values(x)?.into_iter().map(|s| s.powf(t)).collect();
    kind.gauge(&s)
}
