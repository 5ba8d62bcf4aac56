use serde_json::json;

use super::loewner::MeanPair;
use super::report::{ChainBuilder, MatrixChainReport, RelationKind};
use crate::dyadic::{check_unit, phi, r_unchecked, Depth};
use crate::error::{domain, Error, Result};
use crate::func::ScalarFn;
use crate::matkit::{abs_power_norm, ui_norm, HermitianPd, Matrix, NormKind};
use crate::real::Real;

impl<T: Real> MeanPair<T> {
    fn check_x(&self, x: &Matrix<T>, kind: NormKind) -> Result<()> {
        if x.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch {
                left: x.shape(),
                right: (self.dim(), self.dim()),
            });
        }
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        // Validates the Ky Fan index once.
        kind.gauge(&vec![T::zero(); self.dim()])?;
        Ok(())
    }

    /// `A^p X B^q`.
    pub fn sandwich(&self, x: &Matrix<T>, p: T, q: T) -> Matrix<T> {
        &(&self.power_a(p) * x) * &self.power_b(q)
    }

    /// `f(v) = |||A^{1-v} X B^v + A^v X B^{1-v}|||`.
    pub fn heinz_norm(&self, x: &Matrix<T>, v: T, kind: NormKind) -> Result<T> {
        let one = T::one();
        let sum = &self.sandwich(x, one - v, v) + &self.sandwich(x, v, one - v);
        ui_norm(&sum, kind)
    }

    /// `f(v) = ||| |A^{1-v} X B^v|^t ||| · ||| |A^v X B^{1-v}|^t |||`.
    pub fn cs_product(&self, x: &Matrix<T>, t: T, v: T, kind: NormKind) -> Result<T> {
        let one = T::one();
        Ok(abs_power_norm(&self.sandwich(x, one - v, v), t, kind)?
            * abs_power_norm(&self.sandwich(x, v, one - v), t, kind)?)
    }

    /// `f(v) = ||| |A^v X B^v|^t ||| · ||| |A^{-v} X B^{-v}|^t |||` on `[-1, 1]`.
    pub fn symmetric_product(&self, x: &Matrix<T>, t: T, v: T, kind: NormKind) -> Result<T> {
        Ok(abs_power_norm(&self.sandwich(x, v, v), t, kind)?
            * abs_power_norm(&self.sandwich(x, -v, -v), t, kind)?)
    }

    /// `f(v) ≤ |||AX + XB||| - Σ r_n(v) Δ_f(n, k)` for the Heinz norm function.
    pub fn check_norm_heinz(
        &self,
        x: &Matrix<T>,
        v: T,
        depth: Depth,
        kind: NormKind,
        tol: T,
    ) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        self.check_x(x, kind)?;
        let f = ScalarFn::try_new(|s: T| self.heinz_norm(x, s, kind));
        let mut chain = norm_chain("norm_heinz", v, depth, kind, tol);
        let bound = chord_bound(&mut chain, &f, depth, v)?;
        if depth.get() == 1 {
            let f0 = ui_norm(&(&(self.a().matrix() * x) + &(x * self.b().matrix())), kind)?;
            let mid = ui_norm(&self.sandwich(x, T::lit(0.5), T::lit(0.5)), kind)?;
            let two_r0 = T::lit(2.0) * r_unchecked(0, v);
            let closed = chain.scalar("upper_depth_one", f0 - two_r0 * (f0 - T::lit(2.0) * mid));
            chain.eq(bound, closed);
        }
        Ok(chain.finish())
    }

    /// Refined interpolation of the Cauchy-Schwarz norm inequality.
    #[allow(clippy::too_many_arguments)]
    pub fn check_cs_refined(
        &self,
        x: &Matrix<T>,
        t: T,
        v: T,
        depth: Depth,
        kind: NormKind,
        tol: T,
    ) -> Result<MatrixChainReport<T>> {
        check_unit(v)?;
        check_t(t)?;
        self.check_x(x, kind)?;
        let f = ScalarFn::try_new(|s: T| self.cs_product(x, t, s, kind));
        let mut chain = norm_chain("cs_refined", v, depth, kind, tol);
        chain.param("t", json!(t.to_f64()));
        let bound = chord_bound(&mut chain, &f, depth, v)?;
        if depth.get() == 1 {
            let f0 = abs_power_norm(&(self.a().matrix() * x), t, kind)?
                * abs_power_norm(&(x * self.b().matrix()), t, kind)?;
            let mid = abs_power_norm(&self.sandwich(x, T::lit(0.5), T::lit(0.5)), t, kind)?;
            let two_r0 = T::lit(2.0) * r_unchecked(0, v);
            let closed = chain.scalar(
                "upper_depth_one",
                (T::one() - two_r0) * f0 + two_r0 * mid * mid,
            );
            chain.eq(bound, closed);
        }
        Ok(chain.finish())
    }

    /// Refinement on `[-1, 1]`, run through `g(u) = f(2u - 1)` with `u = (v + 1)/2`.
    #[allow(clippy::too_many_arguments)]
    pub fn check_symmetric_power(
        &self,
        x: &Matrix<T>,
        t: T,
        v: T,
        depth: Depth,
        kind: NormKind,
        tol: T,
    ) -> Result<MatrixChainReport<T>> {
        if !(v >= -T::one() && v <= T::one()) {
            return Err(domain("v", v, "[-1, 1]"));
        }
        check_t(t)?;
        self.check_x(x, kind)?;
        let two = T::lit(2.0);
        let u = (v + T::one()) / two;
        let g = ScalarFn::try_new(|s: T| self.symmetric_product(x, t, two * s - T::one(), kind));
        let mut chain = norm_chain("symmetric_power", v, depth, kind, tol);
        chain.param("t", json!(t.to_f64()));
        let lhs = chain.scalar("lhs", self.symmetric_product(x, t, v, kind)?);
        let bound = chain.scalar("upper", phi(&g, depth, u)?);
        chain.le(lhs, bound)?;
        if depth.get() == 1 {
            let f1 = abs_power_norm(&self.sandwich(x, T::one(), T::one()), t, kind)?
                * abs_power_norm(&self.sandwich(x, -T::one(), -T::one()), t, kind)?;
            let f0 = abs_power_norm(x, t, kind)?;
            let two_s0 = two * r_unchecked(0, u);
            let closed = chain.scalar(
                "upper_depth_one",
                (T::one() - two_s0) * f1 + two_s0 * f0 * f0,
            );
            chain.eq(bound, closed);
        }
        Ok(chain.finish())
    }
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(domain("t", t, "(0, inf)"))
    }
}

fn norm_chain<T: Real>(
    theorem: &'static str,
    v: T,
    depth: Depth,
    kind: NormKind,
    tol: T,
) -> ChainBuilder<T> {
    let mut chain = ChainBuilder::new(theorem, RelationKind::NormScalar, tol);
    chain
        .param("v", json!(v.to_f64()))
        .param("N", json!(depth.get()))
        .param("norm", json!(kind));
    chain
}

/// Adds `lhs = f(v)` and `upper = (1-v) f(0) + v f(1) - Σ r_n Δ_f`, asserts
/// `lhs ≤ upper`, and returns the index of `upper`.
///
/// The bound is evaluated as the interpolant `φ_N(v)` it equals, which
/// avoids cancelling large endpoint values against the corrections.
fn chord_bound<T: Real>(
    chain: &mut ChainBuilder<T>,
    f: &ScalarFn<'_, T>,
    depth: Depth,
    v: T,
) -> Result<usize> {
    let lhs = chain.scalar("lhs", f.eval(v)?);
    let bound = chain.scalar("upper", phi(f, depth, v)?);
    chain.le(lhs, bound)?;
    Ok(bound)
}

pub fn check_norm_heinz<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    x: &Matrix<T>,
    v: T,
    depth: Depth,
    kind: NormKind,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_norm_heinz(x, v, depth, kind, tol)
}

#[allow(clippy::too_many_arguments)]
pub fn check_cs_refined<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    x: &Matrix<T>,
    t: T,
    v: T,
    depth: Depth,
    kind: NormKind,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_cs_refined(x, t, v, depth, kind, tol)
}

#[allow(clippy::too_many_arguments)]
pub fn check_symmetric_power<T: Real>(
    a: &HermitianPd<T>,
    b: &HermitianPd<T>,
    x: &Matrix<T>,
    t: T,
    v: T,
    depth: Depth,
    kind: NormKind,
    tol: T,
) -> Result<MatrixChainReport<T>> {
    MeanPair::new(a, b)?.check_symmetric_power(x, t, v, depth, kind, tol)
}
