//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex;

use super::dense::Matrix;
use crate::error::{Error, Result};
use crate::real::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching unitary eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Real> Eigen<T> {
    pub fn min(&self) -> T {
        self.values[0]
    }

    pub fn max(&self) -> T {
        self.values[self.values.len() - 1]
    }

    /// `U diag(f(λ)) U*`.
    pub fn map(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let d: Vec<T> = self.values.iter().map(|&x| f(x)).collect();
        Matrix::congruence_diag(&self.vectors, &d)
    }
}

/// Off-diagonal convergence threshold relative to `‖A‖_F`.
fn rel_stop<T: Real>() -> T {
    T::lit(1e-13).max(T::epsilon() * T::lit(4.0))
}

/// Decomposes the Hermitian part of a square matrix.
///
/// Real input (all imaginary parts zero) takes a real-arithmetic path.
pub fn eigh<T: Real>(a: &Matrix<T>) -> Result<Eigen<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            left: a.shape(),
            right: (a.cols(), a.rows()),
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let h = a.hermitian_part();
    if h.is_real() {
        eigh_real(&h)
    } else {
        eigh_complex(&h)
    }
}

/// Complex path, usable on real input as well.
pub fn eigh_complex<T: Real>(a: &Matrix<T>) -> Result<Eigen<T>> {
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = Matrix::identity(n);
    let zero = Complex::new(T::zero(), T::zero());
    let total = m.frobenius();
    let stop = rel_stop::<T>() * total;

    let off = |m: &Matrix<T>| -> T {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > stop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                let w = apq / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let (c, s) = rotation(app, aqq, r);
                let wc = w.conj();
                // J restricted to (p, q): [[c, s], [-s w̄, c w̄]]
                let jpp = Complex::new(c, T::zero());
                let jpq = Complex::new(s, T::zero());
                let jqp = wc * (-s);
                let jqq = wc * c;
                for i in 0..n {
                    let (xp, xq) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = xp * jpp + xq * jqp;
                    m[(i, q)] = xp * jpq + xq * jqq;
                    let (up, uq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = up * jpp + uq * jqp;
                    v[(i, q)] = up * jpq + uq * jqq;
                }
                for j in 0..n {
                    let (xp, xq) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = jpp.conj() * xp + jqp.conj() * xq;
                    m[(q, j)] = jpq.conj() * xp + jqq.conj() * xq;
                }
                m[(p, q)] = zero;
                m[(q, p)] = zero;
                m[(p, p)].im = T::zero();
                m[(q, q)].im = T::zero();
            }
        }
    }
    let values: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
    Ok(sorted(values, v))
}

fn eigh_real<T: Real>(a: &Matrix<T>) -> Result<Eigen<T>> {
    let n = a.rows();
    let mut m: Vec<T> = a.as_slice().iter().map(|z| z.re).collect();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let total = m.iter().map(|&x| x * x).sum::<T>().sqrt();
    let stop = rel_stop::<T>() * total;

    let off = |m: &[T]| -> T {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > stop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let sign = apq.signum();
                let (c, s) = rotation(m[p * n + p], m[q * n + q], apq.abs());
                let (jpp, jpq, jqp, jqq) = (c, s, -s * sign, c * sign);
                for i in 0..n {
                    let (xp, xq) = (m[i * n + p], m[i * n + q]);
                    m[i * n + p] = xp * jpp + xq * jqp;
                    m[i * n + q] = xp * jpq + xq * jqq;
                    let (up, uq) = (v[i * n + p], v[i * n + q]);
                    v[i * n + p] = up * jpp + uq * jqp;
                    v[i * n + q] = up * jpq + uq * jqq;
                }
                for j in 0..n {
                    let (xp, xq) = (m[p * n + j], m[q * n + j]);
                    m[p * n + j] = jpp * xp + jqp * xq;
                    m[q * n + j] = jpq * xp + jqq * xq;
                }
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();
            }
        }
    }
    let values: Vec<T> = (0..n).map(|i| m[i * n + i]).collect();
    let vectors = Matrix::from_real(n, n, &v).expect("square buffer");
    Ok(sorted(values, vectors))
}

/// `(c, s)` of the real rotation annihilating `r` in `[[app, r], [r, aqq]]`.
fn rotation<T: Real>(app: T, aqq: T, r: T) -> (T, T) {
    let theta = (aqq - app) / (r + r);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let mag = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta >= T::zero() {
            mag
        } else {
            -mag
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    (c, t * c)
}

fn sorted<T: Real>(values: Vec<T>, vectors: Matrix<T>) -> Eigen<T> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .expect("finite eigenvalues")
    });
    let vals = order.iter().map(|&i| values[i]).collect();
    let vecs = Matrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    Eigen {
        values: vals,
        vectors: vecs,
    }
}
