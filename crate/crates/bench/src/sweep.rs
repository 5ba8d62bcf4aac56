use std::io::Write;
use std::path::Path;

use jensen_core::young::{
    d_bounds, dragomir_bounds, kantorovich_bounds, minculete_bounds, specht_bounds, young_lower,
    young_upper_chain,
};
use jensen_core::{BoundChainReport, Depth, YoungInstance};
use serde::Serialize;

use crate::error::BenchError;

type Chain = fn(&YoungInstance<f64>, Depth) -> BoundChainReport<f64>;

/// `(family, chain, link, link is a lower bound)`.
const FAMILIES: &[(&str, Chain, &str, bool)] = &[
    ("young_lower", young_lower, "young_lower", true),
    ("young_upper", young_upper_chain, "young_upper", false),
    (
        "kantorovich_lower",
        kantorovich_bounds,
        "kantorovich_lower",
        true,
    ),
    (
        "kantorovich_upper",
        kantorovich_bounds,
        "kantorovich_upper",
        false,
    ),
    ("dragomir_lower", dragomir_bounds, "dragomir_lower", true),
    ("dragomir_upper", dragomir_bounds, "dragomir_upper", false),
    (
        "minculete_lower",
        |i, _| minculete_bounds(i),
        "minculete_lower",
        true,
    ),
    ("specht_lower", specht_bounds, "specht_lower", true),
    ("specht_upper", specht_bounds, "specht_upper", false),
    ("d_lower", d_bounds, "d_lower", true),
    ("d_upper", d_bounds, "d_upper", false),
];

/// Emits `dragomir_lower` and `young_lower` rows side by side.
pub const DRAGOMIR_VS_YOUNG: &str = "dragomir_vs_young";

pub fn family_names() -> Vec<&'static str> {
    FAMILIES
        .iter()
        .map(|f| f.0)
        .chain([DRAGOMIR_VS_YOUNG])
        .collect()
}

/// One evaluated bound; `slack ≥ 0` means the relation holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: &'static str,
    pub a: f64,
    pub b: f64,
    pub v: f64,
    #[serde(rename = "N")]
    pub n: u32,
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
}

impl SweepRow {
    pub const HEADER: &'static str = "family,a,b,v,N,lhs,bound,slack";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e}",
            self.family, self.a, self.b, self.v, self.n, self.lhs, self.bound, self.slack
        )
    }
}

fn row(family: &'static str, inst: &YoungInstance<f64>, n: u32) -> SweepRow {
    let &(_, chain, link, lower) = FAMILIES
        .iter()
        .find(|f| f.0 == family)
        .expect("known family");
    let r = chain(inst, Depth::new(n).expect("validated depth"));
    let bound = r.link(link).expect("family link exists");
    SweepRow {
        family,
        a: inst.a(),
        b: inst.b(),
        v: inst.v(),
        n,
        lhs: r.lhs,
        bound,
        slack: if lower { r.lhs - bound } else { bound - r.lhs },
    }
}

/// Rows for every `v = i/(grid-1)` and `N` in `depths`, ordered by `N`
/// then `v`.
pub fn sweep(
    family: &str,
    a: f64,
    b: f64,
    grid: usize,
    depths: (u32, u32),
) -> Result<Vec<SweepRow>, BenchError> {
    let names: Vec<&'static str> = if family == DRAGOMIR_VS_YOUNG {
        vec!["dragomir_lower", "young_lower"]
    } else {
        match FAMILIES.iter().find(|f| f.0 == family) {
            Some(f) => vec![f.0],
            None => return Err(BenchError::UnknownFamily(family.into())),
        }
    };
    if grid < 2 {
        return Err(BenchError::Config("grid needs at least 2 points".into()));
    }
    let (lo, hi) = depths;
    if lo > hi || hi > crate::config::MAX_DEPTH {
        return Err(BenchError::Config(format!("bad depth range {lo}..{hi}")));
    }
    let base = YoungInstance::new(a, b, 0.0)?;
    let mut rows = Vec::new();
    for n in lo..=hi {
        for i in 0..grid {
            let inst = base.at(i as f64 / (grid - 1) as f64)?;
            rows.extend(names.iter().map(|name| row(name, &inst, n)));
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<(), BenchError> {
    let io = |source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    writeln!(out, "{}", SweepRow::HEADER).map_err(io)?;
    for r in rows {
        writeln!(out, "{}", r.to_csv()).map_err(io)?;
    }
    out.flush().map_err(io)
}
