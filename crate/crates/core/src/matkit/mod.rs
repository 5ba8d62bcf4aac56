//! Dense Hermitian matrix numerics: Jacobi eigensolver, functional calculus,
//! weighted means, unitarily invariant norms and the Loewner order.

mod dense;
mod eigen;
mod fixture;
mod hpd;
mod loewner;
mod means;
mod norms;

pub use dense::Matrix;
pub use eigen::{eigh, eigh_complex, Eigen};
pub use fixture::MatrixFixture;
pub use hpd::{calculus, decompose, frac_power, HermitianPd};
pub use loewner::{loewner_leq, LoewnerWitness};
pub use means::{
    f_max, f_min, heinz, heinz_scalar, nabla, nabla_scalar, sharp, sharp_f, GeometricPath,
};
pub use norms::{abs_power_norm, singular_values, ui_norm, NormKind};

pub(crate) use means::nabla_matrix;
