//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite `f64` values, which never happens for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// `2^e` as an exact power of two.
    #[inline]
    fn pow2(e: i32) -> Self {
        Self::lit(2.0).powi(e)
    }

    /// Relative tolerance used by scalar identities: `1e-12`, floored at a
    /// small multiple of machine epsilon so narrower types stay usable.
    fn default_rel_tol() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `base^x` evaluated as `exp(x ln base)`.
///
/// Every positive-base power in the scalar families goes through this one
/// kernel, so algebraically equal forms share their rounding behaviour.
#[inline]
pub fn powr<T: Real>(base: T, x: T) -> T {
    if x == T::zero() {
        return T::one();
    }
    (x * base.ln()).exp()
}

/// Weighted geometric path `a^{1-v} b^v`.
#[inline]
pub fn geo<T: Real>(a: T, b: T, v: T) -> T {
    if a == b {
        return a;
    }
    powr(a, T::one() - v) * powr(b, v)
}

/// Weighted arithmetic mean `(1-v) a + v b`.
#[inline]
pub fn chord<T: Real>(a: T, b: T, v: T) -> T {
    (T::one() - v) * a + v * b
}

/// Relative closeness test used throughout the tests and the harness.
pub fn close_rel<T: Real>(x: T, y: T, rel: T) -> bool {
    (x - y).abs() <= rel * T::one().max(x.abs()).max(y.abs())
}
