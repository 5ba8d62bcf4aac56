//! Opaque scalar function handles and node-value memoization.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::error::{domain, Result};
use crate::real::Real;

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn unit() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn everything() -> Self {
        Self::new(T::neg_infinity(), T::infinity())
    }

    pub fn positive() -> Self {
        Self::new(T::min_positive_value(), T::infinity())
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn covers(&self, other: &Interval<T>) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

type Eval<'a, T> = Box<dyn Fn(T) -> Result<T> + Send + Sync + 'a>;

/// A real-valued function on a closed interval, evaluated pointwise.
///
/// Evaluation outside the domain is a [`crate::Error::Domain`] error. The
/// wrapped closure must be deterministic.
pub struct ScalarFn<'a, T> {
    eval: Eval<'a, T>,
    domain: Interval<T>,
}

impl<'a, T: Real> ScalarFn<'a, T> {
    /// Infallible function on `[0, 1]`.
    pub fn new(f: impl Fn(T) -> T + Send + Sync + 'a) -> Self {
        Self {
            eval: Box::new(move |v| Ok(f(v))),
            domain: Interval::unit(),
        }
    }

    /// Fallible function on `[0, 1]`.
    pub fn try_new(f: impl Fn(T) -> Result<T> + Send + Sync + 'a) -> Self {
        Self {
            eval: Box::new(f),
            domain: Interval::unit(),
        }
    }

    /// Replaces the domain.
    pub fn on(mut self, lo: T, hi: T) -> Self {
        self.domain = Interval::new(lo, hi);
        self
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    pub fn eval(&self, v: T) -> Result<T> {
        if !self.domain.contains(v) {
            return Err(domain("v", v, "the function's domain"));
        }
        (self.eval)(v)
    }
}

impl<T: Real> fmt::Debug for ScalarFn<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFn")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// The dyadic rational `k / 2^level`, exact for `k < 2^53` in `f64`.
#[inline]
pub fn dyadic_value<T: Real>(k: u64, level: u32) -> T {
    T::from_u64(k).expect("u64 converts") * T::pow2(-(level as i32))
}

/// Anything that can be sampled pointwise on `[0, 1]`.
pub trait Sampled<T: Real> {
    fn sample(&self, v: T) -> Result<T>;

    /// Value at the dyadic node `k / 2^level`.
    fn node(&self, k: u64, level: u32) -> Result<T> {
        self.sample(dyadic_value(k, level))
    }

    /// Domain the samples may be taken from.
    fn domain(&self) -> Interval<T> {
        Interval::unit()
    }
}

impl<T: Real> Sampled<T> for ScalarFn<'_, T> {
    fn sample(&self, v: T) -> Result<T> {
        self.eval(v)
    }

    fn domain(&self) -> Interval<T> {
        self.domain
    }
}

impl<T: Real, S: Sampled<T> + ?Sized> Sampled<T> for &S {
    fn sample(&self, v: T) -> Result<T> {
        (**self).sample(v)
    }

    fn node(&self, k: u64, level: u32) -> Result<T> {
        (**self).node(k, level)
    }

    fn domain(&self) -> Interval<T> {
        (**self).domain()
    }
}

/// Memoizes node values of a sampled function.
///
/// Keys are dyadic rationals in lowest terms, so `2/4` and `1/2` share an
/// entry. The cache is single-threaded; give each worker its own.
pub struct NodeCache<S, T> {
    inner: S,
    nodes: RefCell<HashMap<(u32, u64), T>>,
}

impl<T: Real, S: Sampled<T>> NodeCache<S, T> {
    pub fn new(inner: S) -> Self {
        Self {
            inner,
            nodes: RefCell::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Number of distinct nodes evaluated so far.
    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<T: Real, S: Sampled<T>> Sampled<T> for NodeCache<S, T> {
    fn sample(&self, v: T) -> Result<T> {
        self.inner.sample(v)
    }

    fn node(&self, mut k: u64, mut level: u32) -> Result<T> {
        while level > 0 && k.is_multiple_of(2) {
            k /= 2;
            level -= 1;
        }
        if let Some(&hit) = self.nodes.borrow().get(&(level, k)) {
            return Ok(hit);
        }
        let value = self.inner.node(k, level)?;
        self.nodes.borrow_mut().insert((level, k), value);
        Ok(value)
    }

    fn domain(&self) -> Interval<T> {
        self.inner.domain()
    }
}
