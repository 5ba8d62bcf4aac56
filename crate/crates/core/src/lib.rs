//! Dyadic refinements of Jensen- and Young-type inequalities, scalar and
//! matrix versions, with signed-slack reports for every bound.
//!
//! Core routines are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod dyadic;
pub mod error;
pub mod func;
pub mod matineq;
pub mod matkit;
pub mod real;
pub mod report;
pub mod young;

pub use dyadic::{Depth, DyadicCoord, JensenBounds};
pub use error::{Error, Result};
pub use func::{Interval, NodeCache, Sampled, ScalarFn};
pub use matineq::{MatrixChainReport, MeanPair};
pub use matkit::{HermitianPd, Matrix, NormKind};
pub use real::Real;
pub use report::{BoundChainReport, ChainBuilder, Link, Relation, Slack, Term};
pub use young::YoungInstance;

pub type YoungInstance64 = YoungInstance<f64>;
pub type BoundChainReport64 = BoundChainReport<f64>;
pub type ScalarFn64<'a> = ScalarFn<'a, f64>;
pub type Matrix64 = Matrix<f64>;
pub type HermitianPd64 = HermitianPd<f64>;
pub type MeanPair64 = MeanPair<f64>;
pub type MatrixChainReport64 = MatrixChainReport<f64>;
