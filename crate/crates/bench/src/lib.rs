//! Seeded verification harness for `jensen-core`: instance generators,
//! parallel suite runner with JSON reports, and CSV tightness sweeps.

pub mod config;
pub mod error;
pub mod gen;
pub mod suite;
pub mod sweep;

pub use config::{Suite, SuiteConfig};
pub use error::BenchError;
pub use gen::{gen_general, gen_pd, gen_pd_planted, gen_scalar, gen_unitary, trial_seed};
pub use suite::{run_suite, v_grid, SuiteOutcome};
pub use sweep::{sweep, write_csv, SweepRow};
