use super::{check_positive, YoungInstance};
use crate::dyadic::{active_weights, jensen_refined, r_unchecked, Depth, DyadicCoord};
use crate::error::Result;
use crate::func::{NodeCache, ScalarFn};
use crate::real::{geo, Real};
use crate::report::{BoundChainReport, ChainBuilder, Term};

use super::g_square;

const SERIES_RADIUS: f64 = 1e-4;

/// Specht ratio `S(t) = t^{1/(t-1)} / (e ln t^{1/(t-1)})`, with `S(1) = 1`.
pub fn specht<T: Real>(t: T) -> Result<T> {
    check_positive("t", t)?;
    Ok(specht_unchecked(t))
}

pub(crate) fn specht_unchecked<T: Real>(t: T) -> T {
    let u = t - T::one();
    if u.abs() < T::lit(SERIES_RADIUS) {
        // 1 + u²/8 - u³/8 + 139 u⁴/1152
        let c4 = T::lit(139.0 / 1152.0);
        let c3 = T::lit(-0.125);
        let c2 = T::lit(0.125);
        return T::one() + u * u * (c2 + u * (c3 + u * c4));
    }
    // ln S = y - 1 - ln y with y = ln t / (t - 1)
    let y = t.ln() / u;
    let w = y - T::one();
    if w.abs() < T::lit(0.5) {
        (w - w.ln_1p()).exp()
    } else {
        (w - y.ln()).exp()
    }
}

/// `D(t) = (t + 1/t) / 2`.
pub fn d_func<T: Real>(t: T) -> Result<T> {
    check_positive("t", t)?;
    Ok((t + t.recip()) / T::lit(2.0))
}

/// Refinement of `S(c^{r_0(v)}) a^{1-v} b^v ≤ (1-v)a + vb ≤ S(c) a^{1-v} b^v`
/// with `c = b/a`. The second differences are taken numerically from
/// `f(v) = S(c^{r_0(v)}) a^{1-v} b^v`.
pub fn specht_bounds<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let l = inst.log_ratio();
    let f =
        ScalarFn::new(move |x: T| specht_unchecked((r_unchecked(0, x) * l).exp()) * geo(a, b, x));
    let cached = NodeCache::new(&f);
    let refined = jensen_refined(&cached, depth, v).expect("v lies in [0, 1]");
    let base = f.eval(v).expect("v lies in [0, 1]");

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let base_lower = chain.link("specht_baseline_lower", base);
    let lower = chain.link("specht_lower", refined.lower);
    let upper = chain.link("specht_upper", refined.upper);
    let base_upper = chain.link(
        "specht_baseline_upper",
        specht_unchecked(l.exp()) * geo(a, b, v),
    );
    chain
        .ge(Term::Lhs, base_lower)
        .ge(Term::Lhs, lower)
        .le(Term::Lhs, upper)
        .le(Term::Lhs, base_upper);
    if depth.get() >= 1 {
        chain.ge(lower, base_lower);
    }
    chain.finish()
}

/// Bounds from `f(v) = D(c^{r_0(v)}) a^{1-v} b^v`, written through
/// `a^{1-2v} b^{2v}` on each half of `[0, 1]`.
pub fn d_bounds<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let upper_half = v > half;
    let w = if upper_half { v - half } else { v };

    let mut lower_sum = T::zero();
    let mut upper_sum = T::zero();
    for (cell, _) in active_weights(1, depth, w) {
        let weight = r_unchecked(cell.level(), v);
        if weight == T::zero() {
            continue;
        }
        let coarse = DyadicCoord::new(cell.level() - 1, cell.cell())
            .expect("cells of [0, 1/2] fit one level up");
        lower_sum += weight * g_square(a, b, coarse);
        upper_sum += weight * g_square(b, a, coarse);
    }

    let (lower, upper) = if upper_half {
        (
            half * (geo(a, b, two * w) + b),
            half * a + b - half * geo(b, a, two * w),
        )
    } else {
        (
            half * (geo(a, b, two * w) + a),
            a + half * b - half * geo(b, a, two * w),
        )
    };

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let lo = chain.link("d_lower", lower + half * lower_sum);
    let up = chain.link("d_upper", upper - half * upper_sum);
    chain.ge(Term::Lhs, lo).le(Term::Lhs, up);
    chain.finish()
}
