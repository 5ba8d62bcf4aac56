//! Dyadic weights, second differences and the refined Jensen bounds.
//!
//! The tent functions `r_n` vanish at every level-`n` node `k / 2^n` and
//! peak at `1/2` in the middle of each cell. Summing `r_n(v) Δ_f(n, k)` over
//! the active cell of each level turns the chord of `f` into its piecewise
//! linear interpolant at the level-`N` nodes:
//!
//! ```text
//! (1-v) f(0) + v f(1) - Σ_{n<N} r_n(v) Δ_f(n, k_n(v)) = φ_N(v)
//! ```
//!
//! For convex `f` the interpolant sits above `f`, which gives the refined
//! lower bound `f(v) + Σ ... ≤ chord`, and the mirrored sum gives the
//! matching upper bound.

use crate::error::{domain, Error, Result};
use crate::func::{dyadic_value, Sampled};
use crate::real::Real;

/// Largest refinement depth accepted anywhere in the crate.
pub const MAX_DEPTH: u32 = 40;

/// Largest level for which dyadic nodes are exact in `f64`.
pub const MAX_LEVEL: u32 = 52;

/// Deepest level `piecewise_check` will sample (it visits every cell).
pub const MAX_CHECK_LEVEL: u32 = 20;

/// A cell `((k-1)/2^n, k/2^n]` of the level-`n` dyadic partition of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicCoord {
    level: u32,
    cell: u64,
}

impl DyadicCoord {
    pub fn new(level: u32, cell: u64) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::DepthTooLarge {
                depth: level,
                max: MAX_LEVEL,
            });
        }
        let max = 1u64 << level;
        if cell == 0 || cell > max {
            return Err(Error::CellOutOfRange { level, cell, max });
        }
        Ok(Self { level, cell })
    }

    /// The cell containing `v`, with `v = 0` assigned to the first cell.
    pub fn containing<T: Real>(level: u32, v: T) -> Result<Self> {
        check_unit(v)?;
        if level > MAX_LEVEL {
            return Err(Error::DepthTooLarge {
                depth: level,
                max: MAX_LEVEL,
            });
        }
        Ok(Self {
            level,
            cell: cell_index(level, v),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn cell(&self) -> u64 {
        self.cell
    }

    /// Number of cells at this level.
    pub fn cells(&self) -> u64 {
        1u64 << self.level
    }

    /// The cell reflected through `1/2`: `k ↦ 2^n - k + 1`.
    pub fn mirror(&self) -> Self {
        Self {
            level: self.level,
            cell: self.cells() - self.cell + 1,
        }
    }

    pub fn left<T: Real>(&self) -> T {
        dyadic_value(self.cell - 1, self.level)
    }

    pub fn right<T: Real>(&self) -> T {
        dyadic_value(self.cell, self.level)
    }

    pub fn mid<T: Real>(&self) -> T {
        dyadic_value(2 * self.cell - 1, self.level + 1)
    }
}

/// Number of dyadic levels summed by a refinement (outer sums run `0..N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Depth(u32);

impl Depth {
    pub const ZERO: Depth = Depth(0);

    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_DEPTH {
            return Err(Error::DepthTooLarge {
                depth: n,
                max: MAX_DEPTH,
            });
        }
        Ok(Depth(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Levels `0..N` summed by the correction terms.
    pub fn levels(self) -> std::ops::Range<u32> {
        0..self.0
    }
}

impl TryFrom<u32> for Depth {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Depth::new(n)
    }
}

pub(crate) fn check_unit<T: Real>(v: T) -> Result<()> {
    if v >= T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(domain("v", v, "[0, 1]"))
    }
}

/// `max(1, ceil(2^n v))`, clamped to `2^n`.
fn cell_index<T: Real>(level: u32, v: T) -> u64 {
    let x = v * T::pow2(level as i32);
    let k = x.ceil().to_u64().unwrap_or(1);
    k.clamp(1, 1u64 << level)
}

/// `r_n(v)` from the closed piecewise-linear form on the active cell.
pub fn r_closed<T: Real>(n: u32, v: T) -> Result<T> {
    let coord = DyadicCoord::containing(n, v)?;
    Ok(tent(coord, v))
}

#[inline]
fn tent<T: Real>(coord: DyadicCoord, v: T) -> T {
    let x = v * T::pow2(coord.level as i32);
    let k = T::from_u64(coord.cell).expect("u64 converts");
    let half = T::lit(0.5);
    if x <= k - half {
        x - (k - T::one())
    } else {
        k - x
    }
}

/// `r_n(v)` from the recursion `r_n = min{2 r_{n-1}, 1 - 2 r_{n-1}}`.
pub fn r_recursive<T: Real>(n: u32, v: T) -> Result<T> {
    check_unit(v)?;
    if n > MAX_LEVEL {
        return Err(Error::DepthTooLarge {
            depth: n,
            max: MAX_LEVEL,
        });
    }
    let two = T::lit(2.0);
    let mut r = v.min(T::one() - v);
    for _ in 0..n {
        r = (two * r).min(T::one() - two * r);
    }
    Ok(r)
}

/// `R_0(v) = 1 - r_0(v)`.
pub fn big_r0<T: Real>(v: T) -> Result<T> {
    Ok(T::one() - r_closed(0, v)?)
}

/// Second difference `f(l) + f(r) - 2 f(m)` across a cell.
pub fn delta<T: Real, S: Sampled<T> + ?Sized>(f: &S, coord: DyadicCoord) -> Result<T> {
    let n = coord.level;
    let k = coord.cell;
    let two = T::lit(2.0);
    Ok(f.node(k - 1, n)? + f.node(k, n)? - two * f.node(2 * k - 1, n + 1)?)
}

/// `Σ_{n<N} r_n(v) term(n, k_n(v))`, where `k_n(v)` is the level-`n` cell
/// containing `v`. `N = 0` yields exactly zero.
pub fn refinement_sum<T: Real>(
    depth: Depth,
    v: T,
    mut term: impl FnMut(DyadicCoord) -> Result<T>,
) -> Result<T> {
    check_unit(v)?;
    let mut acc = T::zero();
    for n in depth.levels() {
        let coord = DyadicCoord::containing(n, v)?;
        let weight = tent(coord, v);
        if weight != T::zero() {
            acc += weight * term(coord)?;
        }
    }
    Ok(acc)
}

/// `(k_n(v), r_n(v))` for the levels `from..N`. `v` must lie in `[0, 1]`.
pub(crate) fn active_weights<T: Real>(
    from: u32,
    depth: Depth,
    v: T,
) -> impl Iterator<Item = (DyadicCoord, T)> {
    debug_assert!(v >= T::zero() && v <= T::one());
    (from..depth.get()).map(move |n| {
        let coord = DyadicCoord {
            level: n,
            cell: cell_index(n, v),
        };
        (coord, tent(coord, v))
    })
}

/// `r_n(v)` for `v` already known to lie in `[0, 1]`.
pub(crate) fn r_unchecked<T: Real>(n: u32, v: T) -> T {
    tent(
        DyadicCoord {
            level: n,
            cell: cell_index(n, v),
        },
        v,
    )
}

/// `Σ_{n<N} r_n(v) Δ_f(n, k_n(v))`.
pub fn correction_sum<T: Real, S: Sampled<T> + ?Sized>(f: &S, depth: Depth, v: T) -> Result<T> {
    refinement_sum(depth, v, |c| delta(f, c))
}

/// `Σ_{n<N} r_n(v) Δ_f(n, 2^n - k_n(v) + 1)`, the sum used by the reverse bound.
pub fn mirrored_correction_sum<T: Real, S: Sampled<T> + ?Sized>(
    f: &S,
    depth: Depth,
    v: T,
) -> Result<T> {
    refinement_sum(depth, v, |c| delta(f, c.mirror()))
}

/// Piecewise-linear interpolant of `f` at the level-`N` nodes.
pub fn phi<T: Real, S: Sampled<T> + ?Sized>(f: &S, depth: Depth, v: T) -> Result<T> {
    let coord = DyadicCoord::containing(depth.get(), v)?;
    let x = v * T::pow2(depth.get() as i32);
    let k = T::from_u64(coord.cell).expect("u64 converts");
    let left = f.node(coord.cell - 1, coord.level)?;
    let right = f.node(coord.cell, coord.level)?;
    Ok((k - x) * left + (x - k + T::one()) * right)
}

/// Both refined Jensen bounds around the chord `(1-v) f(0) + v f(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JensenBounds<T> {
    pub lower: T,
    pub chord: T,
    pub upper: T,
}

impl<T: Real> JensenBounds<T> {
    /// `chord - lower`; nonnegative when the lower bound holds.
    pub fn lower_slack(&self) -> T {
        self.chord - self.lower
    }

    /// `upper - chord`; nonnegative when the upper bound holds.
    pub fn upper_slack(&self) -> T {
        self.upper - self.chord
    }
}

/// Refined lower and upper Jensen bounds at depth `N`.
///
/// `lower = f(v) + Σ r_n Δ_f(n, k)` and
/// `upper = f(0) + f(1) - f(1-v) - Σ r_n Δ_f(n, 2^n - k + 1)`.
/// Nothing is asserted here; callers compare against `chord`.
pub fn jensen_refined<T: Real, S: Sampled<T> + ?Sized>(
    f: &S,
    depth: Depth,
    v: T,
) -> Result<JensenBounds<T>> {
    check_unit(v)?;
    let f0 = f.node(0, 0)?;
    let f1 = f.node(1, 0)?;
    let chord = (T::one() - v) * f0 + v * f1;
    let lower = f.sample(v)? + correction_sum(f, depth, v)?;
    let upper = f0 + f1 - f.sample(T::one() - v)? - mirrored_correction_sum(f, depth, v)?;
    Ok(JensenBounds {
        lower,
        chord,
        upper,
    })
}

/// Sampling test for the piecewise-convex hypothesis at depth `N`.
///
/// Returns true when `f` looks convex on every level-`(N+1)` cell (second
/// differences over `grid` equispaced points per cell) and every
/// `Δ_f(N, k)` is nonnegative, both up to `tol` scaled by `max(1, |f|)`.
/// Together these give `φ_N ≥ φ_{N+1} ≥ f`, so the depth-`N` bounds hold.
pub fn piecewise_check<T: Real, S: Sampled<T> + ?Sized>(
    f: &S,
    depth: Depth,
    grid: usize,
    tol: T,
) -> Result<bool> {
    if grid < 3 {
        return Err(domain("grid", grid as f64, "at least 3 points per cell"));
    }
    let level = depth.get() + 1;
    if level > MAX_CHECK_LEVEL {
        return Err(Error::DepthTooLarge {
            depth: depth.get(),
            max: MAX_CHECK_LEVEL - 1,
        });
    }
    let width = T::pow2(-(level as i32));
    let step = width / T::from_usize(grid - 1).expect("usize converts");
    let two = T::lit(2.0);
    let mut values = Vec::with_capacity(grid);
    for m in 1..=(1u64 << level) {
        let left = dyadic_value::<T>(m - 1, level);
        values.clear();
        for j in 0..grid {
            let x = if j + 1 == grid {
                dyadic_value(m, level)
            } else {
                left + step * T::from_usize(j).expect("usize converts")
            };
            values.push(f.sample(x)?);
        }
        for w in values.windows(3) {
            let scale = T::one().max(w[0].abs()).max(w[1].abs()).max(w[2].abs());
            if w[0] + w[2] - two * w[1] < -tol * scale {
                return Ok(false);
            }
        }
    }
    for k in 1..=(1u64 << depth.get()) {
        let coord = DyadicCoord::new(depth.get(), k)?;
        let scale = T::one()
            .max(f.node(k - 1, depth.get())?.abs())
            .max(f.node(k, depth.get())?.abs());
        if delta(f, coord)? < -tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}
