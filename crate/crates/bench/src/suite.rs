use std::cmp::Ordering;
use std::collections::BTreeMap;

use jensen_core::matineq::MatrixChainReport;
use jensen_core::young::{
    d_bounds, dragomir_bounds, kantorovich_bounds, minculete_bounds, specht_bounds, young_lower,
    young_upper_chain,
};
use jensen_core::{BoundChainReport, Depth, MeanPair, NormKind, YoungInstance};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::SuiteConfig;
use crate::error::BenchError;
use crate::gen::{gen_general, gen_pd, gen_scalar, mix, trial_seed};

const SCALAR_STREAM: u64 = 1;
const MATRIX_STREAM: u64 = 2;
/// Deepest level whose dyadic nodes join the `v` grid.
const MAX_GRID_LEVEL: u32 = 8;

/// `{i/32}` together with every node `k/2^L`, `L = min(max_depth + 1, 8)`.
pub fn v_grid(max_depth: u32) -> Vec<f64> {
    let level = (max_depth + 1).min(MAX_GRID_LEVEL);
    let den = 1u64 << level;
    let mut grid: Vec<f64> = (0..=32).map(|i| i as f64 / 32.0).collect();
    grid.extend((0..=den).map(|k| k as f64 / den as f64));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Worst check of a family: smallest slack relative to its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Worst {
    pub relative_slack: f64,
    pub slack: f64,
    pub trial: u64,
    pub seed: u64,
    pub detail: Value,
    #[serde(skip)]
    seq: u64,
}

impl Worst {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.relative_slack
            .total_cmp(&other.relative_slack)
            .then(self.trial.cmp(&other.trial))
            .then(self.seq.cmp(&other.seq))
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FamilyStats {
    pub suite: &'static str,
    pub checks: u64,
    pub failed: u64,
    pub worst: Option<Worst>,
}

impl FamilyStats {
    fn merge(mut self, other: Self) -> Self {
        self.suite = if self.suite.is_empty() {
            other.suite
        } else {
            self.suite
        };
        self.checks += other.checks;
        self.failed += other.failed;
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(if b.key_cmp(&a) == Ordering::Less {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        };
        self
    }
}

type Stats = BTreeMap<&'static str, FamilyStats>;

fn merge(mut a: Stats, b: Stats) -> Stats {
    for (k, v) in b {
        let cur = a.remove(k).unwrap_or_default();
        a.insert(k, cur.merge(v));
    }
    a
}

/// Collects the checks of one trial.
struct Recorder<'a> {
    suite: &'static str,
    trial: u64,
    seed: u64,
    fault: Option<&'a str>,
    seq: u64,
    stats: Stats,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'static str, trial: u64, seed: u64, fault: Option<&'a str>) -> Self {
        Self {
            suite,
            trial,
            seed,
            fault,
            seq: 0,
            stats: Stats::new(),
        }
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn record(
        &mut self,
        family: &'static str,
        slack: f64,
        tolerance: f64,
        detail: impl FnOnce() -> Value,
    ) {
        let (slack, tolerance) = if self.fault == Some(family) {
            (-(slack.abs() + 2.0 * tolerance), tolerance)
        } else {
            (slack, tolerance)
        };
        let relative = if tolerance > 0.0 {
            slack / tolerance
        } else if slack >= 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        let failed = !(slack >= -tolerance);
        let entry = self.stats.entry(family).or_insert_with(|| FamilyStats {
            suite: self.suite,
            ..FamilyStats::default()
        });
        entry.checks += 1;
        entry.failed += u64::from(failed);
        let seq = self.seq;
        self.seq += 1;
        let better = entry
            .worst
            .as_ref()
            .is_none_or(|w| relative.total_cmp(&w.relative_slack) == Ordering::Less);
        if better {
            entry.worst = Some(Worst {
                relative_slack: relative,
                slack,
                trial: self.trial,
                seed: self.seed,
                detail: detail(),
                seq,
            });
        }
    }

    fn scalar(
        &mut self,
        family: &'static str,
        r: &BoundChainReport<f64>,
        inst: &YoungInstance<f64>,
        n: u32,
    ) {
        self.record(
            family,
            r.min_slack(),
            r.tol_used,
            || json!({ "a": inst.a(), "b": inst.b(), "v": inst.v(), "N": n }),
        );
    }

    fn matrix(
        &mut self,
        family: &'static str,
        r: jensen_core::Result<MatrixChainReport<f64>>,
        ctx: &Value,
    ) {
        match r {
            Ok(r) => {
                // The witness closest to failing, as (value, threshold).
                let (value, threshold) = r
                    .witnesses
                    .iter()
                    .map(|w| (w.value, w.threshold))
                    .min_by(|x, y| ratio(x).total_cmp(&ratio(y)))
                    .unwrap_or((0.0, 0.0));
                self.record(family, value, threshold, || {
                    let mut d = ctx.clone();
                    d["params"] = Value::Object(r.params.clone());
                    if !r.flags.is_empty() {
                        d["flags"] = json!(r.flags);
                    }
                    d
                });
            }
            Err(e) => self.record(family, f64::NEG_INFINITY, 0.0, || {
                let mut d = ctx.clone();
                d["error"] = json!(e.to_string());
                d
            }),
        }
    }
}

fn ratio(&(value, threshold): &(f64, f64)) -> f64 {
    if threshold > 0.0 {
        value / threshold
    } else if value >= 0.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

fn depth(n: u32) -> Depth {
    Depth::new(n).expect("validated depth")
}

fn scalar_trial(cfg: &SuiteConfig, grid: &[f64], trial: u64) -> Stats {
    let seed = trial_seed(cfg.seed, SCALAR_STREAM, trial);
    let base = gen_scalar(seed, cfg.range_exp).with_rel_tol(cfg.tol);
    let mut rec = Recorder::new("scalar", trial, seed, cfg.inject_fault.as_deref());
    let extra = grid[(trial % grid.len() as u64) as usize];
    for v in [base.v(), extra] {
        let inst = base.at(v).expect("grid lies in [0, 1]");
        rec.scalar("minculete", &minculete_bounds(&inst), &inst, 1);
        for n in 0..=cfg.max_depth {
            let d = depth(n);
            rec.scalar("young_lower", &young_lower(&inst, d), &inst, n);
            rec.scalar("young_upper", &young_upper_chain(&inst, d), &inst, n);
            rec.scalar("kantorovich", &kantorovich_bounds(&inst, d), &inst, n);
            rec.scalar("dragomir", &dragomir_bounds(&inst, d), &inst, n);
            rec.scalar("specht", &specht_bounds(&inst, d), &inst, n);
            rec.scalar("d_bounds", &d_bounds(&inst, d), &inst, n);
        }
    }
    rec.stats
}

fn matrix_trial(cfg: &SuiteConfig, grid: &[f64], trial: u64) -> Stats {
    let seed = trial_seed(cfg.seed, MATRIX_STREAM, trial);
    let mut rec = Recorder::new("matrix", trial, seed, cfg.inject_fault.as_deref());
    let (lo, hi) = cfg.dim_range;
    let dim = lo + (mix(seed) % (hi - lo + 1) as u64) as usize;
    let complex = cfg.complex && trial % 2 == 1;
    let a = gen_pd(trial_seed(seed, 0, 0), dim, cfg.cond_max, complex);
    let b = gen_pd(trial_seed(seed, 0, 1), dim, cfg.cond_max, complex);
    let x = gen_general(trial_seed(seed, 0, 2), dim, complex);
    let t = [0.5, 1.0, 2.0][(trial % 3) as usize];
    let kind = [
        NormKind::Trace,
        NormKind::Frobenius,
        NormKind::Spectral,
        NormKind::KyFan(dim.div_ceil(2)),
    ][(trial % 4) as usize];
    let ctx = json!({ "dim": dim, "complex": complex });
    let pair = match MeanPair::new(&a, &b) {
        Ok(p) => p,
        Err(e) => {
            rec.matrix("fixture", Err(e), &ctx);
            return rec.stats;
        }
    };
    let tol = cfg.matrix_tol;
    for &v in grid {
        rec.matrix(
            "geo_mean_refined",
            pair.check_geo_mean_refined(v, tol),
            &ctx,
        );
        for n in 0..=cfg.matrix_max_depth {
            let d = depth(n);
            rec.matrix("d_matrix", pair.check_d_matrix(v, d, tol), &ctx);
            rec.matrix("heinz_refined", pair.check_heinz_refined(v, d, tol), &ctx);
            rec.matrix("inverse_mean", pair.check_inverse_mean(v, d, tol), &ctx);
            rec.matrix(
                "norm_heinz",
                pair.check_norm_heinz(&x, v, d, kind, tol),
                &ctx,
            );
            rec.matrix(
                "cs_refined",
                pair.check_cs_refined(&x, t, v, d, kind, tol),
                &ctx,
            );
            rec.matrix(
                "symmetric_power",
                pair.check_symmetric_power(&x, t, 2.0 * v - 1.0, d, kind, tol),
                &ctx,
            );
        }
    }
    rec.stats
}

/// Exit status and JSON summary of a run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub exit_code: i32,
    pub report: Value,
    pub families: BTreeMap<&'static str, FamilyStats>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn failing_families(&self) -> Vec<&'static str> {
        self.families
            .iter()
            .filter(|(_, s)| s.failed > 0)
            .map(|(k, _)| *k)
            .collect()
    }
}

/// Runs the selected suites. Violations are reported, never raised; the
/// exit code is 0 when every check passed and 1 otherwise.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome, BenchError> {
    cfg.validate()?;
    let mut stats = Stats::new();
    if cfg.suite.scalar() {
        let grid = v_grid(cfg.max_depth);
        let s = (0..cfg.trials)
            .into_par_iter()
            .map(|i| scalar_trial(cfg, &grid, i))
            .reduce(Stats::new, merge);
        stats = merge(stats, s);
    }
    if cfg.suite.matrix() {
        let grid = v_grid(cfg.matrix_max_depth);
        let s = (0..cfg.matrix_trials)
            .into_par_iter()
            .map(|i| matrix_trial(cfg, &grid, i))
            .reduce(Stats::new, merge);
        stats = merge(stats, s);
    }

    let passed = stats.values().all(|s| s.failed == 0);
    let families: serde_json::Map<String, Value> = stats
        .iter()
        .map(|(k, s)| {
            (
                k.to_string(),
                json!({
                    "suite": s.suite,
                    "checks": s.checks,
                    "passed": s.checks - s.failed,
                    "failed": s.failed,
                    "min_relative_slack": s.worst.as_ref().map(|w| w.relative_slack),
                    "worst": s.worst,
                }),
            )
        })
        .collect();
    let failing: Vec<&str> = stats
        .iter()
        .filter(|(_, s)| s.failed > 0)
        .map(|(k, _)| *k)
        .collect();
    let mut report = json!({
        "config": cfg,
        "passed": passed,
        "failing_families": failing,
        "families": families,
    });
    if cfg.timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report["timestamp"] = json!(secs);
    }
    if let Some(path) = &cfg.out_path {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text + "\n").map_err(|source| BenchError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(SuiteOutcome {
        exit_code: if passed { 0 } else { 1 },
        report,
        families: stats,
    })
}
