//! Matrix refinements in the Loewner order and in unitarily invariant norms.

mod loewner;
mod norm;
mod report;

pub use loewner::{
    check_d_matrix, check_geo_mean_refined, check_heinz_refined, check_inverse_mean, g_nk, MeanPair,
};
pub use norm::{check_cs_refined, check_norm_heinz, check_symmetric_power};
pub use report::{LinkValue, MatrixChainReport, MatrixLink, RelationKind, Witness};
