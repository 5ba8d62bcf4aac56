use super::{check_positive, g_sum, ReverseParts, YoungInstance};
use crate::dyadic::{delta, r_unchecked, Depth, DyadicCoord};
use crate::error::Result;
use crate::func::ScalarFn;
use crate::real::{geo, powr, Real};
use crate::report::{BoundChainReport, ChainBuilder, Term};

const BISECTION_STEPS: usize = 80;

/// `K_N(a, b) = (a^{1/2^N} + b^{1/2^N})² / (4 (ab)^{1/2^N})`, evaluated as
/// `cosh²(ln(b/a) / 2^{N+1})`.
pub fn kantorovich_k<T: Real>(a: T, b: T, depth: Depth) -> Result<T> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    Ok(k_unchecked(a, b, depth))
}

fn k_unchecked<T: Real>(a: T, b: T, depth: Depth) -> T {
    let c = ((b.ln() - a.ln()) * T::pow2(-(depth.get() as i32) - 1)).cosh();
    c * c
}

/// Kantorovich-sharpened lower bound and three-link reverse chain.
pub fn kantorovich_bounds<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let k = k_unchecked(a, b, depth);
    let rn = r_unchecked(depth.get(), v);
    let boost = powr(k, rn);
    let parts = ReverseParts::new(inst, depth);
    let mirrored = boost * geo(b, a, v);
    let gap = parts.gap_weight * inst.sqrt_gap_sq();
    let two = T::lit(2.0);

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let lower = chain.link(
        "kantorovich_lower",
        boost * geo(a, b, v) + g_sum(a, b, 0, depth, v),
    );
    let reverse = chain.link("kantorovich_upper_reverse", a + b - mirrored - parts.full);
    let sqrt_form = chain.link(
        "kantorovich_upper_sqrt",
        two * (a * b).sqrt() - mirrored + gap - parts.tail,
    );
    let upper = chain.link(
        "kantorovich_upper",
        powr(k, -rn) * geo(a, b, v) + gap - parts.tail,
    );
    chain
        .ge(Term::Lhs, lower)
        .le(Term::Lhs, reverse)
        .eq(reverse, sqrt_form)
        .le(sqrt_form, upper);
    chain.finish()
}

/// Largest `ξ` for which `ξ^{r_N(v)} a^{1-v} b^v` keeps every `Δ(N, k) ≥ 0`,
/// found by bisection. Returns `1` when `a = b`.
pub fn best_constant_search<T: Real>(a: T, b: T, depth: Depth) -> Result<T> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    if a == b {
        return Ok(T::one());
    }
    let admissible = |xi: T| -> Result<bool> {
        let f = ScalarFn::new(move |x: T| powr(xi, r_unchecked(depth.get(), x)) * geo(a, b, x));
        for k in 1..=(1u64 << depth.get()) {
            if delta(&f, DyadicCoord::new(depth.get(), k)?)? < T::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut lo = T::one();
    let mut hi = T::lit(2.0);
    while admissible(hi)? {
        lo = hi;
        hi *= T::lit(2.0);
        if !hi.is_finite() {
            return Ok(lo);
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if admissible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::r_closed;
    use proptest::prelude::*;

    fn d(n: u32) -> Depth {
        Depth::new(n).unwrap()
    }

    fn direct_k(a: f64, b: f64, n: u32) -> f64 {
        let s = 0.5f64.powi(n as i32);
        (a.powf(s) + b.powf(s)).powi(2) / (4.0 * (a * b).powf(s))
    }

    /// Closed-form lower and upper bounds at depth one.
    fn kantorovich_depth_one(a: f64, b: f64, v: f64) -> (f64, f64) {
        let k1 = direct_k(a, b, 1);
        let r0 = v.min(1.0 - v);
        let r1 = r_closed(1, v).unwrap();
        let g = a.powf(1.0 - v) * b.powf(v);
        let gap = (a.sqrt() - b.sqrt()).powi(2);
        (
            k1.powf(r1) * g + r0 * gap,
            k1.powf(-r1) * g + (1.0 - r0) * gap,
        )
    }

    /// Closed-form lower and upper bounds at depth two.
    fn kantorovich_depth_two(a: f64, b: f64, v: f64) -> (f64, f64) {
        let k2 = direct_k(a, b, 2);
        let r0 = v.min(1.0 - v);
        let r1 = r_closed(1, v).unwrap();
        let r2 = r_closed(2, v).unwrap();
        let g = a.powf(1.0 - v) * b.powf(v);
        let gap = (a.sqrt() - b.sqrt()).powi(2);
        let q = (a * b).powf(0.25);
        let (lo_br, up_br) = if v < 0.5 {
            ((q - a.sqrt()).powi(2), (q - b.sqrt()).powi(2))
        } else if v > 0.5 {
            ((b.sqrt() - q).powi(2), (a.sqrt() - q).powi(2))
        } else {
            (0.0, 0.0)
        };
        (
            k2.powf(r2) * g + r0 * gap + r1 * lo_br,
            k2.powf(-r2) * g + (1.0 - r0) * gap - r1 * up_br,
        )
    }

    #[test]
    fn constant_examples() {
        assert_eq!(kantorovich_k(3.0_f64, 3.0, d(2)).unwrap(), 1.0);
        assert!((kantorovich_k(1.0_f64, 4.0, d(0)).unwrap() - 1.5625).abs() < 1e-15);
        assert!((kantorovich_k(1.0_f64, 4.0, d(1)).unwrap() - 1.125).abs() < 1e-15);
        assert!(kantorovich_k(0.0_f64, 4.0, d(1)).is_err());
        for n in 0..8 {
            for &(a, b) in &[(0.01, 7.0), (3.0, 900.0), (2.0, 0.5)] {
                let k = kantorovich_k(a, b, d(n)).unwrap();
                assert!(k >= 1.0);
                assert!((k - direct_k(a, b, n)).abs() <= 1e-13 * k);
                assert_eq!(k, kantorovich_k(b, a, d(n)).unwrap());
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let r = kantorovich_bounds(&YoungInstance::<f64>::new(2.0, 2.0, 0.3).unwrap(), d(2));
        for l in &r.links {
            assert!((l.value - 2.0).abs() < 1e-14, "{}", l.label);
        }

        let r = kantorovich_bounds(&YoungInstance::<f64>::new(1.0, 4.0, 0.25).unwrap(), d(1));
        let expected = 1.125f64.sqrt() * 2f64.sqrt() + 0.25;
        assert!((r.link("kantorovich_lower").unwrap() - expected).abs() < 1e-14);
        assert!(r.passed && r.slacks[0].value >= 0.0);
    }

    #[test]
    fn dyadic_nodes_reduce_to_young() {
        for n in 0..5u32 {
            for k in 0..=(1u64 << n) {
                let v = k as f64 / (1u64 << n) as f64;
                let inst = YoungInstance::<f64>::new(0.4, 9.0, v).unwrap();
                let kr = kantorovich_bounds(&inst, d(n));
                let lower = super::super::young_lower(&inst, d(n));
                let upper = super::super::young_upper_chain(&inst, d(n));
                assert_eq!(kr.link("kantorovich_lower"), lower.link("young_lower"));
                assert_eq!(kr.link("kantorovich_upper"), upper.link("young_upper"));
            }
        }
    }

    #[test]
    fn best_constant_examples() {
        assert_eq!(best_constant_search(2.0_f64, 2.0, d(1)).unwrap(), 1.0);
        let k1 = best_constant_search(1.0_f64, 4.0, d(1)).unwrap();
        assert!((k1 - 1.125).abs() < 1e-6 * 1.125);
        let k0 = best_constant_search(1.0_f64, 4.0, d(0)).unwrap();
        assert!((k0 - 1.5625).abs() < 1e-6 * 1.5625);
    }

    proptest! {
        #[test]
        fn reductions_at_depth_one_and_two(la in -3.0f64..3.0, lb in -3.0f64..3.0, v in 0.0f64..=1.0) {
            let (a, b) = (10f64.powf(la), 10f64.powf(lb));
            let inst = YoungInstance::<f64>::new(a, b, v).unwrap();
            let r1 = kantorovich_bounds(&inst, d(1));
            let (lo, up) = kantorovich_depth_one(a, b, v);
            prop_assert!((r1.link("kantorovich_lower").unwrap() - lo).abs() <= 1e-12 * lo);
            prop_assert!((r1.link("kantorovich_upper").unwrap() - up).abs() <= 1e-12 * up);
            let r2 = kantorovich_bounds(&inst, d(2));
            let (lo, up) = kantorovich_depth_two(a, b, v);
            prop_assert!((r2.link("kantorovich_lower").unwrap() - lo).abs() <= 1e-12 * lo);
            prop_assert!((r2.link("kantorovich_upper").unwrap() - up).abs() <= 1e-12 * up);
        }

        #[test]
        fn chain_holds(la in -3.0f64..3.0, lb in -3.0f64..3.0, v in 0.0f64..=1.0, n in 0u32..6) {
            let inst = YoungInstance::<f64>::new(10f64.powf(la), 10f64.powf(lb), v).unwrap();
            let r = kantorovich_bounds(&inst, d(n));
            prop_assert!(r.passed, "{:?}", r);
        }

        #[test]
        fn bisection_recovers_constant(la in -3.0f64..3.0, lb in -3.0f64..3.0, n in 0u32..4) {
            let (a, b) = (10f64.powf(la), 10f64.powf(lb));
            prop_assume!((la - lb).abs() > 1e-6);
            let k = kantorovich_k(a, b, d(n)).unwrap();
            let xi = best_constant_search(a, b, d(n)).unwrap();
            prop_assert!((xi - k).abs() <= 1e-6 * k, "{} vs {}", xi, k);
        }
    }
}
