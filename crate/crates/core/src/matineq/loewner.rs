use serde_json::json;

use super::report::{ChainBuilder, MatrixChainReport, RelationKind};
use crate::dyadic::{active_weights, check_unit, r_unchecked, Depth, DyadicCoord};
use crate::error::{Error, Result};
use crate::matkit::{f_min, GeometricPath, HermitianPd, Matrix};
use crate::real::{powr, Real};
use crate::young::alpha;

/// A pair of positive-definite matrices with the geometric path and the
/// inverses computed once, shared by every checker.
#[derive(Debug, Clone)]
pub struct MeanPair<T> {
    a: HermitianPd<T>,
    b: HermitianPd<T>,
    path: GeometricPath<T>,
    a_inv: Matrix<T>,
    b_inv: Matrix<T>,
}

impl<T: Real> MeanPair<T> {
    pub fn new(a: &HermitianPd<T>, b: &HermitianPd<T>) -> Result<Self> {
        Ok(Self {
            path: GeometricPath::new(a, b)?,
            a: a.clone(),
            b: b.clone(),
            a_inv: a.inverse().into_matrix(),
            b_inv: b.inverse().into_matrix(),
        })
    }

    pub fn a(&self) -> &HermitianPd<T> {
        &self.a
    }

    pub fn b(&self) -> &HermitianPd<T> {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn path(&self) -> &GeometricPath<T> {
        &self.path
    }

    /// `A ∇_v B`.
    pub fn nabla(&self, v: T) -> Matrix<T> {
        crate::matkit::nabla_matrix(self.a.matrix(), self.b.matrix(), v)
    }

    /// `A ♯_v B`.
    pub fn sharp(&self, v: T) -> Matrix<T> {
        self.path.at(v)
    }

    /// `H_v(A, B)`.
    pub fn heinz(&self, v: T) -> Matrix<T> {
        self.path.heinz(v)
    }

    /// `A^s` from the cached spectrum, exact at `s = 0` and `s = 1`.
    pub fn power_a(&self, s: T) -> Matrix<T> {
        power(&self.a, &self.a_inv, s)
    }

    pub fn power_b(&self, s: T) -> Matrix<T> {
        power(&self.b, &self.b_inv, s)
    }

    /// `G_{n,k}(A, B) = A♯_l B + A♯_r B - 2 A♯_m B` on the cell
    /// `l = (k-1)/2^{n-1}`, `r = k/2^{n-1}`, `m = (2k-1)/2^n`.
    /// Requires `n ≥ 1` and `k ≤ 2^{n-1}`.
    pub fn g_nk(&self, coord: DyadicCoord) -> Result<Matrix<T>> {
        let coarse = coarse_cell(coord)?;
        Ok(self.g_on(coarse, false))
    }

    /// Second ♯-difference on `coarse`; `swap` evaluates `G(B, A)`.
    fn g_on(&self, coarse: DyadicCoord, swap: bool) -> Matrix<T> {
        let at = |x: T| {
            if swap {
                self.path.at(T::one() - x)
            } else {
                self.path.at(x)
            }
        };
        second_difference(&at(coarse.left()), &at(coarse.right()), &at(coarse.mid()))
    }

    fn g_scale(&self, coarse: DyadicCoord, swap: bool) -> T {
        let at = |x: T| {
            let x = if swap { T::one() - x } else { x };
            self.path.at(x).inf_norm()
        };
        at(coarse.left()) + at(coarse.right()) + T::lit(2.0) * at(coarse.mid())
    }

    /// Lower and reverse bounds for `A ∇_v B` with `r_0`, `α` and `A ♯_{f_min} B`.
    pub fn check_geo_mean_refined(&self, v: T, tol: T) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        let r0 = r_unchecked(0, v);
        let al = alpha(v)?;
        let two = T::lit(2.0);
        let g_half = self.sharp(T::lit(0.5));
        let gap = &(self.a.matrix() + self.b.matrix()) - &g_half.scale(two);
        let fmin = self.path.calculus(&f_min())?;
        let tail = &gap.scale(r0) + &fmin.scale(al);
        let mirror = self.sharp(T::one() - v);

        let mut chain = ChainBuilder::new("geo_mean_refined", RelationKind::Loewner, tol);
        chain
            .param("v", json!(v.to_f64()))
            .param("dim", json!(self.dim()));
        let lhs = chain.matrix("lhs", self.nabla(v));
        let lower = chain.matrix("lower", &self.sharp(v) + &tail);
        let reverse = chain.matrix(
            "upper_reverse",
            &(&(self.a.matrix() + self.b.matrix()) - &mirror) - &tail,
        );
        let identity = chain.matrix(
            "upper_r0",
            &(&(&g_half.scale(two) - &mirror) + &gap.scale(T::one() - r0)) - &fmin.scale(al),
        );
        chain.le(lower, lhs)?.le(lhs, reverse)?.le(lhs, identity)?;
        chain.eq(reverse, identity);
        Ok(chain.finish())
    }

    /// Two-case refinement through `A ♯_{2v} B` (or `A ♯_{2v-1} B`) and
    /// sums of `G_{n,k}`. A `G_{n,k}` that is not PSD is flagged, not failed.
    pub fn check_d_matrix(&self, v: T, depth: Depth, tol: T) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        let half = T::lit(0.5);
        let two = T::lit(2.0);
        let upper_half = v > half;
        let w = if upper_half { v - half } else { v };

        let mut chain = ChainBuilder::new("d_matrix", RelationKind::Loewner, tol);
        chain
            .param("v", json!(v.to_f64()))
            .param("N", json!(depth.get()))
            .param("dim", json!(self.dim()));

        let n = self.dim();
        let mut lower_sum = Matrix::zeros(n, n);
        let mut upper_sum = Matrix::zeros(n, n);
        for (cell, _) in active_weights(1, depth, w) {
            let weight = r_unchecked(cell.level(), v);
            if weight == T::zero() {
                continue;
            }
            let coarse = DyadicCoord::new(cell.level() - 1, cell.cell())?;
            for (swap, sum) in [(false, &mut lower_sum), (true, &mut upper_sum)] {
                let g = self.g_on(coarse, swap);
                let name = if swap { "G(B,A)" } else { "G(A,B)" };
                chain.flag_if_not_psd(
                    format!("{name} at n = {}, k = {}", cell.level(), cell.cell()),
                    &g,
                    self.g_scale(coarse, swap),
                )?;
                *sum = &*sum + &g.scale(weight);
            }
        }

        let (a, b) = (self.a.matrix(), self.b.matrix());
        let (lower, upper) = if upper_half {
            (
                (&self.sharp(two * w) + b).scale(half),
                &(&a.scale(half) + b) - &self.sharp(T::one() - two * w).scale(half),
            )
        } else {
            (
                (&self.sharp(two * w) + a).scale(half),
                &(a + &b.scale(half)) - &self.sharp(T::one() - two * w).scale(half),
            )
        };
        let lhs = chain.matrix("lhs", self.nabla(v));
        let lo = chain.matrix("lower", &lower + &lower_sum.scale(half));
        let up = chain.matrix("upper", &upper - &upper_sum.scale(half));
        chain.le(lo, lhs)?.le(lhs, up)?;
        Ok(chain.finish())
    }

    /// `H_v ≤ A ∇ B - Σ r_n(v) (H_l + H_r - 2 H_m)`.
    pub fn check_heinz_refined(&self, v: T, depth: Depth, tol: T) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        let mut chain = ChainBuilder::new("heinz_refined", RelationKind::Loewner, tol);
        chain
            .param("v", json!(v.to_f64()))
            .param("N", json!(depth.get()))
            .param("dim", json!(self.dim()));
        let mean = self.nabla(T::lit(0.5));
        let correction = matrix_correction(self.dim(), depth, v, |x| self.heinz(x));
        let lhs = chain.matrix("lhs", self.heinz(v));
        let bound = chain.matrix("upper", &mean - &correction);
        chain.le(lhs, bound)?;
        if depth.get() == 1 {
            let r0 = r_unchecked(0, v);
            let two_r0 = T::lit(2.0) * r0;
            let closed = &mean.scale(T::one() - two_r0) + &self.sharp(T::lit(0.5)).scale(two_r0);
            let closed = chain.matrix("upper_depth_one", closed);
            chain.eq(bound, closed);
        }
        Ok(chain.finish())
    }

    /// `(A ∇_v B)^{-1} ≤ A^{-1} ∇_v B^{-1} - Σ r_n(v) F_{n,k}(A, B)`.
    pub fn check_inverse_mean(&self, v: T, depth: Depth, tol: T) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        let mut chain = ChainBuilder::new("inverse_mean", RelationKind::Loewner, tol);
        chain
            .param("v", json!(v.to_f64()))
            .param("N", json!(depth.get()))
            .param("dim", json!(self.dim()));
        let inv_mean = |x: T| crate::matkit::nabla_matrix(&self.a_inv, &self.b_inv, x);
        let correction = matrix_correction(self.dim(), depth, v, |x| self.path.nabla_inverse(x));
        let lhs = chain.matrix("lhs", self.path.nabla_inverse(v));
        let bound = chain.matrix("upper", &inv_mean(v) - &correction);
        chain.le(lhs, bound)?;
        if depth.get() == 1 {
            let two_r0 = T::lit(2.0) * r_unchecked(0, v);
            let gap = &inv_mean(T::lit(0.5)) - &self.path.nabla_inverse(T::lit(0.5));
            let closed = chain.matrix("upper_depth_one", &inv_mean(v) - &gap.scale(two_r0));
            chain.eq(bound, closed);
        }
        Ok(chain.finish())
    }
}

fn power<T: Real>(h: &HermitianPd<T>, inv: &Matrix<T>, s: T) -> Matrix<T> {
    if s == T::zero() {
        Matrix::identity(h.dim())
    } else if s == T::one() {
        h.matrix().clone()
    } else if s == -T::one() {
        inv.clone()
    } else {
        h.eigen().map(|x| powr(x, s))
    }
}

/// The level-`(n-1)` cell spanned by the `G_{n,k}` exponents.
fn coarse_cell(coord: DyadicCoord) -> Result<DyadicCoord> {
    let n = coord.level();
    if n == 0 {
        return Err(crate::error::domain("n", 0, "n >= 1"));
    }
    let max = 1u64 << (n - 1);
    if coord.cell() > max {
        return Err(Error::CellOutOfRange {
            level: n,
            cell: coord.cell(),
            max,
        });
    }
    DyadicCoord::new(n - 1, coord.cell())
}

fn second_difference<T: Real>(l: &Matrix<T>, r: &Matrix<T>, m: &Matrix<T>) -> Matrix<T> {
    (&(l + r) - &m.scale(T::lit(2.0))).hermitian_part()
}

/// `Σ_{n<N} r_n(v) (F(l) + F(r) - 2 F(m))` over the cells containing `v`.
fn matrix_correction<T: Real>(
    dim: usize,
    depth: Depth,
    v: T,
    node: impl Fn(T) -> Matrix<T>,
) -> Matrix<T> {
    let mut acc = Matrix::zeros(dim, dim);
    for (cell, weight) in active_weights(0, depth, v) {
        if weight == T::zero() {
            continue;
        }
        let d = second_difference(&node(cell.left()), &node(cell.right()), &node(cell.mid()));
        acc = &acc + &d.scale(weight);
    }
    acc
}

/// `G_{n,k}(A, B)`.
pub fn g_nk<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    coord: DyadicCoord,
) -> Result<Matrix<T>> {
    let coarse = coarse_cell(coord)?;
    let path = GeometricPath::new(a, b)?;
    let at = |x: T| path.at(x);
    Ok(second_difference(
        &at(coarse.left()),
        &at(coarse.right()),
        &at(coarse.mid()),
    ))
}

pub fn check_geo_mean_refined<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    v: T,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_geo_mean_refined(v, tol)
}

pub fn check_d_matrix<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    v: T,
    depth: Depth,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_d_matrix(v, depth, tol)
}

pub fn check_heinz_refined<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    v: T,
    depth: Depth,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_heinz_refined(v, depth, tol)
}

pub fn check_inverse_mean<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    v: T,
    depth: Depth,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_inverse_mean(v, depth, tol)
}
