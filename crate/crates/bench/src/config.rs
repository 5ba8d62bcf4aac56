use std::path::PathBuf;

use serde::Serialize;

use crate::error::BenchError;

pub const MAX_DEPTH: u32 = 40;
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Scalar,
    Matrix,
    All,
}

impl Suite {
    pub fn scalar(self) -> bool {
        matches!(self, Suite::Scalar | Suite::All)
    }

    pub fn matrix(self) -> bool {
        matches!(self, Suite::Matrix | Suite::All)
    }
}

/// Settings of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Scalar instances.
    pub trials: u64,
    pub seed: u64,
    /// Scalar depths run `0..=max_depth`.
    pub max_depth: u32,
    pub dim_range: (usize, usize),
    /// Relative tolerance of the scalar chains.
    pub tol: f64,
    /// Matrix fixtures.
    pub matrix_trials: u64,
    pub matrix_max_depth: u32,
    /// PSD tolerance scale of the matrix chains.
    pub matrix_tol: f64,
    /// Odd-numbered matrix fixtures are complex when set.
    pub complex: bool,
    pub range_exp: f64,
    pub cond_max: f64,
    pub timestamp: bool,
    #[serde(skip)]
    pub out_path: Option<PathBuf>,
    /// Negates every slack of the named family.
    #[doc(hidden)]
    #[serde(skip)]
    pub inject_fault: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            trials: 1000,
            seed: 42,
            max_depth: 5,
            dim_range: (2, 6),
            tol: 1e-12,
            matrix_trials: 200,
            matrix_max_depth: 4,
            matrix_tol: 1e-8,
            complex: true,
            range_exp: 3.0,
            cond_max: 1e3,
            timestamp: true,
            out_path: None,
            inject_fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |m: String| Err(BenchError::Config(m));
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if self.suite.matrix() && self.matrix_trials == 0 {
            return fail("matrix trials must be at least 1".into());
        }
        if self.max_depth > MAX_DEPTH || self.matrix_max_depth > MAX_DEPTH {
            return fail(format!("depths must not exceed {MAX_DEPTH}"));
        }
        let (lo, hi) = self.dim_range;
        if lo == 0 || hi > MAX_DIM || lo > hi {
            return fail(format!(
                "dims {lo}..{hi} must satisfy 1 <= min <= max <= {MAX_DIM}"
            ));
        }
        for (name, x) in [("tol", self.tol), ("matrix tol", self.matrix_tol)] {
            if !(x.is_finite() && x >= 0.0) {
                return fail(format!("{name} must be a nonnegative number"));
            }
        }
        if !(self.range_exp.is_finite() && self.range_exp > 0.0) {
            return fail("range exponent must be positive".into());
        }
        if !(self.cond_max.is_finite() && self.cond_max >= 1.0) {
            return fail("condition cap must be at least 1".into());
        }
        Ok(())
    }
}

/// Parses `LO..HI` (inclusive on both ends).
pub fn parse_range<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let p = |x: &str| {
        x.trim()
            .parse::<T>()
            .map_err(|_| format!("bad bound `{x}` in `{s}`"))
    };
    Ok((p(lo)?, p(hi)?))
}
