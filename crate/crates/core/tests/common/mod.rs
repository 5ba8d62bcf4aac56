#![allow(dead_code)]

use jensen_core::{HermitianPd, Matrix};
use num_complex::Complex;
use proptest::prelude::*;

/// Orthonormalizes the columns of a square matrix (modified Gram-Schmidt).
pub fn unitary(raw: &Matrix<f64>) -> Matrix<f64> {
    let n = raw.rows();
    let mut cols: Vec<Vec<Complex<f64>>> = (0..n)
        .map(|j| (0..n).map(|i| raw[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for p in 0..j {
            let dot: Complex<f64> = (0..n).map(|i| cols[p][i].conj() * cols[j][i]).sum();
            let (done, rest) = cols.split_at_mut(j);
            for (x, &y) in rest[0].iter_mut().zip(&done[p]) {
                *x -= y * dot;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-8, "degenerate random matrix");
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    Matrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `Q diag(λ) Q*` with `Q` from `raw` and `λ = 10^logs`.
pub fn pd(raw: &Matrix<f64>, logs: &[f64]) -> HermitianPd<f64> {
    let q = unitary(raw);
    let lambda: Vec<f64> = logs.iter().map(|l| 10f64.powf(*l)).collect();
    HermitianPd::new(Matrix::congruence_diag(&q, &lambda)).unwrap()
}

pub fn diag_pd(d: &[f64]) -> HermitianPd<f64> {
    HermitianPd::new(Matrix::from_diag(d)).unwrap()
}

pub fn raw_matrix(n: usize, complex: bool) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |e| {
        let data = e
            .into_iter()
            .map(|(re, im)| Complex::new(re, if complex { im } else { 0.0 }))
            .collect();
        Matrix::new(n, n, data).unwrap()
    })
}

/// Positive-definite matrix with condition number at most `10^max_log`.
pub fn pd_of(n: usize, complex: bool, max_log: f64) -> impl Strategy<Value = HermitianPd<f64>> {
    (
        raw_matrix(n, complex),
        proptest::collection::vec(0.0..=max_log, n),
        -1.0f64..1.0,
    )
        .prop_filter_map("well-conditioned basis", move |(raw, logs, shift)| {
            let logs: Vec<f64> = logs.iter().map(|l| l + shift).collect();
            std::panic::catch_unwind(|| pd(&raw, &logs)).ok()
        })
}

/// `(A, B, X)` of one dimension in `dims`, real or complex.
pub fn triple(
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (HermitianPd<f64>, HermitianPd<f64>, Matrix<f64>)> {
    (dims, any::<bool>()).prop_flat_map(|(n, complex)| {
        (
            pd_of(n, complex, 3.0),
            pd_of(n, complex, 3.0),
            raw_matrix(n, complex),
        )
    })
}

pub fn rel_frobenius(x: &Matrix<f64>, y: &Matrix<f64>) -> f64 {
    (x - y).frobenius() / y.frobenius().max(f64::MIN_POSITIVE)
}
