use super::dense::Matrix;
use super::eigen::{eigh, Eigen};
use crate::error::{domain, Error, Result};
use crate::func::{Interval, ScalarFn};
use crate::real::{powr, Real};

/// Hermitian positive-definite matrix with its spectrum computed eagerly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianPd<T> {
    matrix: Matrix<T>,
    eigen: Eigen<T>,
}

impl<T: Real> HermitianPd<T> {
    /// Checks Hermitian symmetry (`‖A - A*‖_max ≤ tol ‖A‖_max`) and
    /// positivity, then decomposes.
    pub fn new(a: Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                left: a.shape(),
                right: (a.cols(), a.rows()),
            });
        }
        if !a.is_finite() {
            return Err(Error::NonFinite);
        }
        let asym = a.hermitian_asymmetry();
        let scale = a.max_abs();
        if asym > T::default_rel_tol() * scale {
            return Err(Error::NotHermitian {
                asymmetry: asym.to_f64().unwrap_or(f64::NAN),
                scale: scale.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::from_hermitian(a.hermitian_part())
    }

    /// Symmetrizes a matrix that is Hermitian up to rounding, then decomposes.
    pub(crate) fn from_computed(a: Matrix<T>) -> Result<Self> {
        Self::from_hermitian(a.hermitian_part())
    }

    fn from_hermitian(a: Matrix<T>) -> Result<Self> {
        let eigen = eigh(&a)?;
        check_positive(&eigen)?;
        Ok(Self { matrix: a, eigen })
    }

    /// `U diag(λ) U*` from a unitary `U` and positive `λ` (any order).
    pub fn from_spectrum(values: &[T], vectors: Matrix<T>) -> Result<Self> {
        if vectors.rows() != values.len() || vectors.cols() != values.len() {
            return Err(Error::DimensionMismatch {
                left: vectors.shape(),
                right: (values.len(), values.len()),
            });
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| {
            values[i]
                .partial_cmp(&values[j])
                .expect("finite eigenvalues")
        });
        let n = values.len();
        let eigen = Eigen {
            values: order.iter().map(|&i| values[i]).collect(),
            vectors: Matrix::from_fn(n, n, |r, c| vectors[(r, order[c])]),
        };
        if eigen.values.iter().any(|x| !x.is_finite()) || !eigen.vectors.is_finite() {
            return Err(Error::NonFinite);
        }
        check_positive(&eigen)?;
        let matrix = Matrix::congruence_diag(&eigen.vectors, &eigen.values);
        Ok(Self { matrix, eigen })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: Matrix::identity(n),
            eigen: Eigen {
                values: vec![T::one(); n],
                vectors: Matrix::identity(n),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }

    pub fn eigen(&self) -> &Eigen<T> {
        &self.eigen
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigen.values
    }

    pub fn eigenvectors(&self) -> &Matrix<T> {
        &self.eigen.vectors
    }

    pub fn spectrum(&self) -> Interval<T> {
        Interval::new(self.eigen.min(), self.eigen.max())
    }

    pub fn condition(&self) -> T {
        self.eigen.max() / self.eigen.min()
    }

    /// `f(A) = U f(Λ) U*`; `f`'s domain must cover the spectrum.
    pub fn calculus(&self, f: &ScalarFn<'_, T>) -> Result<Matrix<T>> {
        calculus_on(&self.eigen, f)
    }

    /// `A^p` for any real `p`, sharing the eigenvectors of `A`.
    pub fn frac_power(&self, p: T) -> Self {
        let values: Vec<T> = self.eigen.values.iter().map(|&x| powr(x, p)).collect();
        Self::from_spectrum(&values, self.eigen.vectors.clone())
            .expect("powers of a positive spectrum stay positive")
    }

    pub fn inverse(&self) -> Self {
        self.frac_power(-T::one())
    }
}

pub(crate) fn calculus_on<T: Real>(eigen: &Eigen<T>, f: &ScalarFn<'_, T>) -> Result<Matrix<T>> {
    let spec = Interval::new(eigen.min(), eigen.max());
    if !f.domain().covers(&spec) {
        return Err(domain(
            "spectrum",
            if f.domain().contains(spec.lo) {
                spec.hi
            } else {
                spec.lo
            },
            "the function's domain",
        ));
    }
    let d = eigen
        .values
        .iter()
        .map(|&x| f.eval(x))
        .collect::<Result<Vec<T>>>()?;
    Ok(Matrix::congruence_diag(&eigen.vectors, &d))
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check_positive<T: Real>(eigen: &Eigen<T>) -> Result<()> {
    let n = T::from_usize(eigen.values.len()).expect("usize converts");
    let min = eigen.min();
    if !(min > n * T::epsilon() * eigen.max()) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Decomposes `A` (convenience wrapper returning the cached spectrum).
pub fn decompose<T: Real>(a: &HermitianPd<T>) -> (&[T], &Matrix<T>) {
    (a.eigenvalues(), a.eigenvectors())
}

/// Functional calculus on a positive-definite matrix.
pub fn calculus<T: Real>(a: &HermitianPd<T>, f: &ScalarFn<'_, T>) -> Result<Matrix<T>> {
    a.calculus(f)
}

/// `A^p`.
pub fn frac_power<T: Real>(a: &HermitianPd<T>, p: T) -> HermitianPd<T> {
    a.frac_power(p)
}
