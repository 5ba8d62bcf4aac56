use super::dense::{check_same, Matrix};
use super::eigen::{eigh, Eigen};
use super::hpd::{calculus_on, HermitianPd};
use crate::dyadic::check_unit;
use crate::error::Result;
use crate::func::ScalarFn;
use crate::real::{chord, geo, powr, Real};

/// `A ∇_v B = (1-v) A + v B`.
pub fn nabla<T: Real>(a: &HermitianPd<T>, b: &HermitianPd<T>, v: T) -> Result<HermitianPd<T>> {
    check_same(a.matrix(), b.matrix())?;
    check_unit(v)?;
    HermitianPd::from_computed(nabla_matrix(a.matrix(), b.matrix(), v))
}

pub(crate) fn nabla_matrix<T: Real>(a: &Matrix<T>, b: &Matrix<T>, v: T) -> Matrix<T> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        a[(i, j)] * (T::one() - v) + b[(i, j)] * v
    })
}

/// The path `v ↦ A ♯_v B = A^{1/2} C^v A^{1/2}` with `C = A^{-1/2} B A^{-1/2}`.
///
/// `A^{±1/2}` come from the spectrum of `A` and `C` is decomposed once, so
/// evaluating many weights costs two products each.
#[derive(Debug, Clone)]
pub struct GeometricPath<T> {
    a: Matrix<T>,
    b: Matrix<T>,
    a_half: Matrix<T>,
    a_neg_half: Matrix<T>,
    c: Eigen<T>,
}

impl<T: Real> GeometricPath<T> {
    pub fn new(a: &HermitianPd<T>, b: &HermitianPd<T>) -> Result<Self> {
        check_same(a.matrix(), b.matrix())?;
        let half = T::lit(0.5);
        let a_half = a.frac_power(half).into_matrix();
        let a_neg_half = a.frac_power(-half).into_matrix();
        let c = &(&a_neg_half * b.matrix()) * &a_neg_half;
        Ok(Self {
            a: a.matrix().clone(),
            b: b.matrix().clone(),
            a_half,
            a_neg_half,
            c: eigh(&c.hermitian_part())?,
        })
    }

    /// Spectrum of `A^{-1/2} B A^{-1/2}`.
    pub fn ratio_spectrum(&self) -> &[T] {
        &self.c.values
    }

    /// `A ♯_v B`; the endpoints return `A` and `B` exactly.
    pub fn at(&self, v: T) -> Matrix<T> {
        if v == T::zero() {
            return self.a.clone();
        }
        if v == T::one() {
            return self.b.clone();
        }
        self.wrap(&self.c.map(|x| powr(x, v)))
    }

    /// `A ♯_f B = A^{1/2} f(C) A^{1/2}`.
    pub fn calculus(&self, f: &ScalarFn<'_, T>) -> Result<Matrix<T>> {
        Ok(self.wrap(&calculus_on(&self.c, f)?))
    }

    /// `H_v = (A ♯_v B + A ♯_{1-v} B) / 2`.
    pub fn heinz(&self, v: T) -> Matrix<T> {
        (&self.at(v) + &self.at(T::one() - v)).scale(T::lit(0.5))
    }

    /// `(A ∇_v B)^{-1} = A^{-1/2} ((1-v) I + v C)^{-1} A^{-1/2}`.
    pub fn nabla_inverse(&self, v: T) -> Matrix<T> {
        let inner = self.c.map(|x| (T::one() - v + v * x).recip());
        (&(&self.a_neg_half * &inner) * &self.a_neg_half).hermitian_part()
    }

    fn wrap(&self, inner: &Matrix<T>) -> Matrix<T> {
        (&(&self.a_half * inner) * &self.a_half).hermitian_part()
    }
}

/// `A ♯_v B`.
pub fn sharp<T: Real>(a: &HermitianPd<T>, b: &HermitianPd<T>, v: T) -> Result<HermitianPd<T>> {
    check_unit(v)?;
    HermitianPd::from_computed(GeometricPath::new(a, b)?.at(v))
}

/// `A ♯_f B`.
pub fn sharp_f<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    f: &ScalarFn<'_, T>,
) -> Result<Matrix<T>> {
    GeometricPath::new(a, b)?.calculus(f)
}

/// Heinz mean `(A ♯_v B + A ♯_{1-v} B) / 2`.
pub fn heinz<T: Real>(a: &HermitianPd<T>, b: &HermitianPd<T>, v: T) -> Result<Matrix<T>> {
    check_unit(v)?;
    Ok(GeometricPath::new(a, b)?.heinz(v))
}

/// Scalar Heinz mean `(a^{1-v} b^v + a^v b^{1-v}) / 2`.
pub fn heinz_scalar<T: Real>(a: T, b: T, v: T) -> T {
    (geo(a, b, v) + geo(b, a, v)) / T::lit(2.0)
}

/// `f_min(x) = min(1, x) (ln x)²` on `(0, ∞)`.
pub fn f_min<'a, T: Real>() -> ScalarFn<'a, T> {
    ScalarFn::new(|x: T| {
        let l = x.ln();
        x.min(T::one()) * l * l
    })
    .on(T::min_positive_value(), T::infinity())
}

/// `f_max(x) = max(1, x) (ln x)²` on `(0, ∞)`.
pub fn f_max<'a, T: Real>() -> ScalarFn<'a, T> {
    ScalarFn::new(|x: T| {
        let l = x.ln();
        x.max(T::one()) * l * l
    })
    .on(T::min_positive_value(), T::infinity())
}

/// Scalar arithmetic mean, for the commuting-case oracles.
pub fn nabla_scalar<T: Real>(a: T, b: T, v: T) -> T {
    chord(a, b, v)
}
