//! Young-type inequality families built on the dyadic refinement.
//!
//! Every family evaluates a chain around `(1-v) a + v b` and returns a
//! [`BoundChainReport`] with one signed slack per asserted relation.

mod dragomir;
mod kantorovich;
mod specht;

pub use dragomir::{alpha, dragomir_bounds, dragomir_coeff, minculete_bounds, zeta};
pub use kantorovich::{best_constant_search, kantorovich_bounds, kantorovich_k};
pub use specht::{d_bounds, d_func, specht, specht_bounds};

use crate::dyadic::{active_weights, r_unchecked, Depth, DyadicCoord};
use crate::error::{domain, Result};
use crate::real::{chord, geo, Real};
use crate::report::{BoundChainReport, ChainBuilder, Term};

/// Positive `a`, `b` and a weight `v ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoungInstance<T> {
    a: T,
    b: T,
    v: T,
    rel_tol: T,
}

impl<T: Real> YoungInstance<T> {
    pub fn new(a: T, b: T, v: T) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("b", b)?;
        if !(v >= T::zero() && v <= T::one()) {
            return Err(domain("v", v, "[0, 1]"));
        }
        Ok(Self {
            a,
            b,
            v,
            rel_tol: T::default_rel_tol(),
        })
    }

    /// Overrides the relative tolerance (default `1e-12`).
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn v(&self) -> T {
        self.v
    }

    /// The same pair with the weight replaced.
    pub fn at(&self, v: T) -> Result<Self> {
        Ok(Self::new(self.a, self.b, v)?.with_rel_tol(self.rel_tol))
    }

    /// The same weight with `a` and `b` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            ..*self
        }
    }

    /// Absolute tolerance `rel_tol · max(a, b)` used for every slack.
    pub fn tol(&self) -> T {
        self.rel_tol * self.a.max(self.b)
    }

    /// `(1-v) a + v b`.
    pub fn lhs(&self) -> T {
        chord(self.a, self.b, self.v)
    }

    /// `c = b / a`.
    pub fn ratio(&self) -> T {
        self.b / self.a
    }

    /// `ln(b / a)`, computed as `ln b - ln a` so it is exactly odd under swapping.
    pub fn log_ratio(&self) -> T {
        self.b.ln() - self.a.ln()
    }

    /// `(√a - √b)²`.
    pub fn sqrt_gap_sq(&self) -> T {
        let d = self.a.sqrt() - self.b.sqrt();
        d * d
    }
}

fn check_positive<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(name, x, "(0, inf)"))
    }
}

/// `g_{n,k}(a, b) = Δ_f(n, k)` for `f(v) = a^{1-v} b^v`, in its square form
/// `(√f(l) - √f(r))²`.
pub fn g_nk<T: Real>(a: T, b: T, coord: DyadicCoord) -> Result<T> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    Ok(g_square(a, b, coord))
}

/// `g_{n,k}(a, b)` as the raw second difference `f(l) + f(r) - 2 f(m)`.
pub fn g_nk_delta_form<T: Real>(a: T, b: T, coord: DyadicCoord) -> Result<T> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    let two = T::lit(2.0);
    Ok(geo(a, b, coord.left()) + geo(a, b, coord.right()) - two * geo(a, b, coord.mid()))
}

pub(crate) fn g_square<T: Real>(a: T, b: T, coord: DyadicCoord) -> T {
    let d = geo(a, b, coord.left()).sqrt() - geo(a, b, coord.right()).sqrt();
    d * d
}

/// `Σ_{n=from}^{N-1} r_n(v) g_{n, k_n(v)}(a, b)`.
pub(crate) fn g_sum<T: Real>(a: T, b: T, from: u32, depth: Depth, v: T) -> T {
    active_weights(from, depth, v)
        .filter(|&(_, w)| w != T::zero())
        .map(|(c, w)| w * g_square(a, b, c))
        .sum()
}

/// Pieces shared by the plain and Kantorovich reverse chains.
struct ReverseParts<T> {
    /// `Σ_{n<N} r_n g_{n,k}(b, a)`
    full: T,
    /// `Σ_{1≤n<N} r_n g_{n,k}(b, a)`
    tail: T,
    /// `R_0(v)` when `N ≥ 1`, otherwise `1` (no level-0 term was subtracted)
    gap_weight: T,
}

impl<T: Real> ReverseParts<T> {
    fn new(inst: &YoungInstance<T>, depth: Depth) -> Self {
        let (a, b, v) = (inst.a, inst.b, inst.v);
        let gap_weight = if depth.get() >= 1 {
            T::one() - r_unchecked(0, v)
        } else {
            T::one()
        };
        Self {
            full: g_sum(b, a, 0, depth, v),
            tail: g_sum(b, a, 1, depth, v),
            gap_weight,
        }
    }
}

/// `(1-v) a + v b ≥ a^{1-v} b^v + Σ_{n<N} r_n(v) g_{n,k}(a, b)`.
pub fn young_lower<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let lower = chain.link("young_lower", geo(a, b, v) + g_sum(a, b, 0, depth, v));
    chain.ge(Term::Lhs, lower);
    chain.finish()
}

/// The reverse chain
///
/// ```text
/// lhs ≤ a + b - a^v b^{1-v} - Σ_{n<N} r_n g_{n,k}(b, a)
///     = 2√(ab) - a^v b^{1-v} + R_0 (√a - √b)² - Σ_{1≤n<N} r_n g_{n,k}(b, a)
///     ≤ a^{1-v} b^v + R_0 (√a - √b)² - Σ_{1≤n<N} r_n g_{n,k}(b, a)
/// ```
///
/// At `N = 0` the weight `R_0` is replaced by `1`, keeping the middle
/// equality exact.
pub fn young_upper_chain<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let parts = ReverseParts::new(inst, depth);
    let mirrored = geo(b, a, v);
    let gap = parts.gap_weight * inst.sqrt_gap_sq();
    let two = T::lit(2.0);

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let reverse = chain.link("young_upper_reverse", a + b - mirrored - parts.full);
    let sqrt_form = chain.link(
        "young_upper_sqrt",
        two * (a * b).sqrt() - mirrored + gap - parts.tail,
    );
    let upper = chain.link("young_upper", geo(a, b, v) + gap - parts.tail);
    chain
        .le(Term::Lhs, reverse)
        .eq(reverse, sqrt_form)
        .le(sqrt_form, upper);
    chain.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::r_closed;
    use crate::func::ScalarFn;
    use proptest::prelude::*;

    fn d(n: u32) -> Depth {
        Depth::new(n).unwrap()
    }

    fn c(n: u32, k: u64) -> DyadicCoord {
        DyadicCoord::new(n, k).unwrap()
    }

    /// `a^{1-v} b^v + r_0(v) (√a - √b)²`.
    fn sqrt_gap_form(a: f64, b: f64, v: f64) -> f64 {
        a.powf(1.0 - v) * b.powf(v) + v.min(1.0 - v) * (a.sqrt() - b.sqrt()).powi(2)
    }

    /// Depth-two lower bound written out term by term.
    fn quarter_root_form(a: f64, b: f64, v: f64) -> f64 {
        let r0 = v.min(1.0 - v);
        let r1 = (2.0 * r0).min(1.0 - 2.0 * r0);
        let q = (a * b).powf(0.25);
        let bracket = if v < 0.5 {
            (a.sqrt() - q).powi(2)
        } else if v > 0.5 {
            (q - b.sqrt()).powi(2)
        } else {
            0.0
        };
        sqrt_gap_form(a, b, v) + r1 * bracket
    }

    #[test]
    fn instance_validation() {
        assert!(YoungInstance::<f64>::new(0.0, 1.0, 0.5).is_err());
        assert!(YoungInstance::<f64>::new(1.0, -2.0, 0.5).is_err());
        assert!(YoungInstance::<f64>::new(1.0, 2.0, 1.5).is_err());
        assert!(YoungInstance::<f64>::new(1.0, f64::INFINITY, 0.5).is_err());
        assert!(YoungInstance::<f64>::new(1.0, 2.0, 1.0).is_ok());
    }

    #[test]
    fn g_nk_examples() {
        for n in 0..5 {
            for k in 1..=(1u64 << n) {
                assert_eq!(g_nk(3.0, 3.0, c(n, k)).unwrap(), 0.0);
            }
        }
        assert!((g_nk(1.0_f64, 16.0, c(1, 1)).unwrap() - 1.0).abs() < 1e-14);
        assert!((g_nk(1.0_f64, 4.0, c(0, 1)).unwrap() - 1.0).abs() < 1e-14);
        assert!(g_nk(0.0, 4.0, c(0, 1)).is_err());
        assert!(g_nk_delta_form(1.0, -4.0, c(0, 1)).is_err());
    }

    #[test]
    fn g_nk_matches_generic_second_difference() {
        let (a, b) = (0.7, 13.0);
        let f = ScalarFn::new(move |v: f64| geo(a, b, v));
        for n in 0..6 {
            for k in 1..=(1u64 << n) {
                let generic = crate::dyadic::delta(&f, c(n, k)).unwrap();
                let sq = g_nk(a, b, c(n, k)).unwrap();
                assert!((generic - sq).abs() <= 1e-12 * b);
            }
        }
    }

    #[test]
    fn young_lower_examples() {
        let inst = YoungInstance::<f64>::new(1.0, 4.0, 0.25).unwrap();
        let r = young_lower(&inst, d(1));
        assert_eq!(r.lhs, 1.75);
        let link = r.link("young_lower").unwrap();
        assert!((link - 1.664_213_562_373_095).abs() < 1e-12);
        assert!(r.slacks[0].value > 0.0 && r.passed);

        let r2 = young_lower(&inst, d(2));
        let oracle = quarter_root_form(1.0, 4.0, 0.25);
        assert!((r2.link("young_lower").unwrap() - oracle).abs() <= 1e-12 * oracle);

        for n in 0..6 {
            for &v in &[0.0, 1.0] {
                let r = young_lower(&inst.at(v).unwrap(), d(n));
                assert!(r.slacks[0].value.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn young_upper_examples() {
        let r = young_upper_chain(&YoungInstance::<f64>::new(2.5, 2.5, 0.3).unwrap(), d(3));
        for l in &r.links {
            assert!((l.value - 2.5).abs() < 1e-14, "{}: {}", l.label, l.value);
        }

        let r = young_upper_chain(&YoungInstance::<f64>::new(1.0, 4.0, 0.25).unwrap(), d(1));
        let link3 = r.link("young_upper").unwrap();
        assert!((link3 - (2f64.sqrt() + 0.75)).abs() < 1e-14);
        assert!(r.lhs <= link3 && r.passed);

        for &(a, b) in &[(1.0_f64, 4.0), (0.3, 11.0), (9.0, 2.0)] {
            let r = young_upper_chain(&YoungInstance::<f64>::new(a, b, 0.5).unwrap(), d(1));
            let link1 = r.link("young_upper_reverse").unwrap();
            assert!((r.lhs - (a + b) / 2.0).abs() < 1e-14);
            assert!((link1 - r.lhs).abs() < 1e-13 * b.max(a));
            assert!(r.passed);
        }
    }

    #[test]
    fn upper_third_link_reduces_to_sqrt_gap_form_reverse() {
        for &(a, b, v) in &[(1.0_f64, 4.0, 0.25), (0.2, 30.0, 0.8), (5.0, 0.5, 0.6)] {
            let r = young_upper_chain(&YoungInstance::<f64>::new(a, b, v).unwrap(), d(1));
            let oracle = a.powf(1.0 - v) * b.powf(v)
                + (1.0 - v.min(1.0 - v)) * (a.sqrt() - b.sqrt()).powi(2);
            assert!((r.link("young_upper").unwrap() - oracle).abs() <= 1e-12 * oracle);
        }
    }

    proptest! {
        #[test]
        fn chains_hold(la in -3.0f64..3.0, lb in -3.0f64..3.0, v in 0.0f64..=1.0, n in 0u32..6) {
            let inst = YoungInstance::<f64>::new(10f64.powf(la), 10f64.powf(lb), v).unwrap();
            prop_assert!(young_lower(&inst, d(n)).passed);
            prop_assert!(young_upper_chain(&inst, d(n)).passed);
        }

        #[test]
        fn links_monotone_in_depth(la in -3.0f64..3.0, lb in -3.0f64..3.0, v in 0.0f64..=1.0, n in 0u32..6) {
            let inst = YoungInstance::<f64>::new(10f64.powf(la), 10f64.powf(lb), v).unwrap();
            let lo0 = young_lower(&inst, d(n)).link("young_lower").unwrap();
            let lo1 = young_lower(&inst, d(n + 1)).link("young_lower").unwrap();
            prop_assert!(lo1 >= lo0 - 1e-12 * inst.a().max(inst.b()));
            let up0 = young_upper_chain(&inst, d(n)).link("young_upper_reverse").unwrap();
            let up1 = young_upper_chain(&inst, d(n + 1)).link("young_upper_reverse").unwrap();
            prop_assert!(up1 <= up0 + 1e-12 * inst.a().max(inst.b()));
        }

        #[test]
        fn delta_and_square_forms_agree(la in -3.0f64..3.0, lb in -3.0f64..3.0, n in 0u32..8, frac in 0.0f64..1.0) {
            let (a, b) = (10f64.powf(la), 10f64.powf(lb));
            let k = 1 + ((1u64 << n) as f64 * frac) as u64;
            let coord = c(n, k.min(1 << n));
            let sq = g_nk(a, b, coord).unwrap();
            let df = g_nk_delta_form(a, b, coord).unwrap();
            prop_assert!(sq >= 0.0);
            prop_assert!((sq - df).abs() <= 1e-12 * a.max(b));
        }

        #[test]
        fn lower_matches_generic_jensen(la in -2.0f64..2.0, lb in -2.0f64..2.0, v in 0.0f64..=1.0, n in 0u32..6) {
            let (a, b) = (10f64.powf(la), 10f64.powf(lb));
            let f = ScalarFn::new(move |x: f64| geo(a, b, x));
            let generic = crate::dyadic::jensen_refined(&f, d(n), v).unwrap();
            let inst = YoungInstance::<f64>::new(a, b, v).unwrap();
            let lower = young_lower(&inst, d(n)).link("young_lower").unwrap();
            let upper = young_upper_chain(&inst, d(n)).link("young_upper_reverse").unwrap();
            prop_assert!((generic.lower - lower).abs() <= 1e-12 * a.max(b));
            prop_assert!((generic.upper - upper).abs() <= 1e-12 * a.max(b));
        }
    }

    #[test]
    fn n1_and_n2_reduce_to_classical_forms() {
        for i in 0..200 {
            let a = 10f64.powf(((i * 37) % 61) as f64 / 10.0 - 3.0);
            let b = 10f64.powf(((i * 53) % 59) as f64 / 10.0 - 3.0);
            let v = ((i * 17) % 101) as f64 / 100.0;
            let inst = YoungInstance::<f64>::new(a, b, v).unwrap();
            let n1 = young_lower(&inst, d(1)).link("young_lower").unwrap();
            let n2 = young_lower(&inst, d(2)).link("young_lower").unwrap();
            assert!((n1 - sqrt_gap_form(a, b, v)).abs() <= 1e-12 * n1.abs().max(1.0));
            assert!((n2 - quarter_root_form(a, b, v)).abs() <= 1e-12 * n2.abs().max(1.0));
            assert_eq!(r_closed(1, v).unwrap(), r_unchecked(1, v));
        }
    }
}
