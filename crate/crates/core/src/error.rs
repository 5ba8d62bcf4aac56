use thiserror::Error;

/// Errors raised by the scalar and matrix routines.
///
/// Inequality violations are never errors; they are reported through the
/// slack and witness fields of the chain reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument `{name}` = {value} outside its domain {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("dyadic cell k = {cell} out of range 1..={max} at level {level}")]
    CellOutOfRange { level: u32, cell: u64, max: u64 },
    #[error("refinement depth {depth} exceeds the supported maximum {max}")]
    DepthTooLarge { depth: u32, max: u32 },
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} vs scale {scale:e})")]
    NotHermitian { asymmetry: f64, scale: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("function evaluation failed: {0}")]
    Evaluation(String),
    #[error("invalid fixture: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T: num_traits::ToPrimitive>(
    name: &'static str,
    value: T,
    expected: &'static str,
) -> Error {
    Error::Domain {
        name,
        value: value.to_f64().unwrap_or(f64::NAN),
        expected,
    }
}
