use super::{g_sum, YoungInstance};
use crate::dyadic::{check_unit, r_unchecked, Depth};
use crate::error::Result;
use crate::real::{geo, Real};
use crate::report::{BoundChainReport, ChainBuilder, Term};

/// `v(1-v)/2 - Σ_{n<N} r_n(v) / 2^{n+2}`.
pub fn dragomir_coeff<T: Real>(v: T, depth: Depth) -> Result<T> {
    check_unit(v)?;
    Ok(coeff_unchecked(v, depth))
}

fn coeff_unchecked<T: Real>(v: T, depth: Depth) -> T {
    let half_var = v * (T::one() - v) / T::lit(2.0);
    let sub: T = depth
        .levels()
        .map(|n| r_unchecked(n, v) * T::pow2(-(n as i32) - 2))
        .sum();
    half_var - sub
}

/// `α(v) = v(1-v)/2 - r_0(v)/4`.
pub fn alpha<T: Real>(v: T) -> Result<T> {
    dragomir_coeff(v, Depth::new(1)?)
}

/// `ζ(a, b) = (ln(b/a))² min(a, b)`.
pub fn zeta<T: Real>(inst: &YoungInstance<T>) -> T {
    let l = inst.log_ratio();
    l * l * inst.a.min(inst.b)
}

/// Logarithmic refinement: lower bound, reverse bound and the classical
/// `max(a, b)` upper bound.
pub fn dragomir_bounds<T: Real>(inst: &YoungInstance<T>, depth: Depth) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let log_term = coeff_unchecked(v, depth) * zeta(inst);
    let l = inst.log_ratio();
    let half_var = v * (T::one() - v) / T::lit(2.0);

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let lower = chain.link(
        "dragomir_lower",
        geo(a, b, v) + g_sum(a, b, 0, depth, v) + log_term,
    );
    let upper = chain.link(
        "dragomir_upper",
        a + b - geo(b, a, v) - g_sum(b, a, 0, depth, v) - log_term,
    );
    let classical = chain.link(
        "dragomir_classical_upper",
        geo(a, b, v) + half_var * l * l * a.max(b),
    );
    chain
        .ge(Term::Lhs, lower)
        .le(Term::Lhs, upper)
        .le(Term::Lhs, classical);
    chain.finish()
}

/// Depth-one logarithmic chain. When `a, b ≥ 1` it also asserts dominance
/// over the bounds carrying `α(v) (ln(b/a))²` without the `min(a, b)` factor.
pub fn minculete_bounds<T: Real>(inst: &YoungInstance<T>) -> BoundChainReport<T> {
    let (a, b, v) = (inst.a, inst.b, inst.v);
    let r0 = r_unchecked(0, v);
    let al = coeff_unchecked(v, Depth::new(1).expect("1 is a valid depth"));
    let z = zeta(inst);
    let l = inst.log_ratio();
    let gap = inst.sqrt_gap_sq();
    let g = geo(a, b, v);

    let mut chain = ChainBuilder::new(inst.lhs(), inst.tol());
    let lower = chain.link("minculete_lower", g + r0 * gap + al * z);
    let reverse = chain.link(
        "minculete_upper_reverse",
        a + b - geo(b, a, v) - r0 * gap - al * z,
    );
    let upper = chain.link("minculete_upper", g + (T::one() - r0) * gap - al * z);
    chain
        .ge(Term::Lhs, lower)
        .le(Term::Lhs, reverse)
        .le(reverse, upper);
    if a >= T::one() && b >= T::one() {
        let old_lower = chain.link("minculete_classical_lower", g + r0 * gap + al * l * l);
        let old_upper = chain.link(
            "minculete_classical_upper",
            g + (T::one() - r0) * gap + al * l * l,
        );
        chain.ge(lower, old_lower).le(reverse, old_upper);
    }
    chain.finish()
}
