mod common;

use approx::assert_relative_eq;
use common::*;
use jensen_core::matkit::*;
use jensen_core::young::{d_func, specht};
use jensen_core::{Error, ScalarFn};
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;

fn to_na(m: &Matrix<f64>) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn planted_spectrum_is_recovered() {
    // Q = (1/√3) [[1, 1, 1], [1, ω, ω²], [1, ω², ω]] is the unitary DFT matrix.
    let w = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let s = 1.0 / 3f64.sqrt();
    let q = Matrix::from_fn(3, 3, |i, j| w.powu((i * j) as u32) * s);
    let a = HermitianPd::from_spectrum(&[2.0, 3.0, 1.0], q).unwrap();
    let again = HermitianPd::new(a.matrix().clone()).unwrap();
    for (got, want) in again.eigenvalues().iter().zip([1.0, 2.0, 3.0]) {
        assert!((got - want).abs() < 1e-10);
    }
}

#[test]
fn decompose_examples() {
    let i = HermitianPd::<f64>::identity(3);
    let (vals, vecs) = decompose(&i);
    assert_eq!(vals, &[1.0; 3]);
    assert_eq!(vecs, &Matrix::identity(3));
    let d = diag_pd(&[1.0, 4.0]);
    assert_eq!(decompose(&d).0, &[1.0, 4.0]);
    assert!(matches!(
        HermitianPd::new(Matrix::<f64>::from_diag(&[1.0, 0.0])),
        Err(Error::NotPositiveDefinite { .. })
    ));
}

#[test]
fn frac_power_and_calculus_examples() {
    let a = diag_pd(&[1.0, 4.0]);
    let sqrt = ScalarFn::new(|x: f64| x.sqrt()).on(0.0, f64::INFINITY);
    assert_eq!(calculus(&a, &sqrt).unwrap(), Matrix::from_diag(&[1.0, 2.0]));
    let b = diag_pd(&[4.0, 9.0]);
    assert!(
        rel_frobenius(
            frac_power(&b, 0.5).matrix(),
            &Matrix::from_diag(&[2.0, 3.0])
        ) < 1e-15
    );
}

#[test]
fn specht_and_d_through_sharp_f() {
    // A ♯_S B with A = I is S(B); cross-checks the calculus against scalars.
    let b = diag_pd(&[4.0, 0.5]);
    let s = ScalarFn::new(|x: f64| specht(x).unwrap()).on(1e-300, f64::INFINITY);
    let got = sharp_f(&HermitianPd::identity(2), &b, &s).unwrap();
    assert_relative_eq!(got[(0, 0)].re, specht(4.0).unwrap(), max_relative = 1e-14);
    assert_relative_eq!(got[(1, 1)].re, specht(0.5).unwrap(), max_relative = 1e-14);
    let d = ScalarFn::new(|x: f64| d_func(x).unwrap()).on(1e-300, f64::INFINITY);
    let got = sharp_f(&HermitianPd::identity(2), &b, &d).unwrap();
    assert_relative_eq!(got[(0, 0)].re, 2.125, max_relative = 1e-14);
}

#[test]
fn norm_examples() {
    let x = Matrix::<f64>::from_diag(&[3.0, -4.0]);
    assert_eq!(ui_norm(&x, NormKind::Spectral).unwrap(), 4.0);
    assert_relative_eq!(
        ui_norm(&x, NormKind::Frobenius).unwrap(),
        5.0,
        max_relative = 1e-15
    );
    let mut bad = x.clone();
    bad[(0, 0)] = Complex::new(f64::INFINITY, 0.0);
    assert_eq!(ui_norm(&bad, NormKind::Trace), Err(Error::NonFinite));
}

#[test]
fn fixture_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("matkit-fixture-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    let m = Matrix::new(
        2,
        2,
        vec![
            Complex::new(2.0, 0.0),
            Complex::new(0.5, -0.25),
            Complex::new(0.5, 0.25),
            Complex::new(3.0, 0.0),
        ],
    )
    .unwrap();
    std::fs::write(&path, MatrixFixture::from_matrix(&m).unwrap().to_json()).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let back: Matrix<f64> = MatrixFixture::from_json(&text)
        .unwrap()
        .to_matrix()
        .unwrap();
    assert_eq!(back, m);
    assert!(HermitianPd::new(back).is_ok());
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_match_nalgebra(n in 1usize..=8, complex in any::<bool>(), seed in raw_matrix(8, true)) {
        let raw = Matrix::from_fn(n, n, |i, j| {
            let z = seed[(i, j)];
            Complex::new(z.re, if complex { z.im } else { 0.0 })
        });
        let h = raw.hermitian_part();
        let ours = eigh(&h).unwrap();
        let theirs = sorted(to_na(&h).symmetric_eigen().eigenvalues.iter().copied().collect());
        let scale = h.frobenius().max(1.0);
        for (x, y) in ours.values.iter().zip(&theirs) {
            prop_assert!((x - y).abs() <= 1e-12 * scale, "{x} vs {y}");
        }
        let back = ours.map(|x| x);
        prop_assert!((&back - &h).frobenius() <= 1e-10 * scale);
        let u = &ours.vectors;
        prop_assert!((&(&u.adjoint() * u) - &Matrix::identity(n)).max_abs() <= 1e-10);
    }

    #[test]
    fn singular_values_match_nalgebra(x in (1usize..=8, any::<bool>()).prop_flat_map(|(n, c)| raw_matrix(n, c))) {
        let ours = singular_values(&x).unwrap();
        let svd = to_na(&x).svd(false, false);
        let mut theirs: Vec<f64> = svd.singular_values.iter().copied().collect();
        theirs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let top = theirs[0].max(1e-300);
        for (s, t) in ours.iter().zip(&theirs) {
            // σ from eigenvalues of X*X loses accuracy relative to σ_1 for
            // small singular values: |δσ| ≈ ε σ_1² / σ.
            prop_assert!((s - t).abs() <= 1e-7 * top, "{s} vs {t}");
        }
    }

    #[test]
    fn norm_triangle_and_unitary_invariance(
        (x, y, u, v) in (1usize..=8, any::<bool>()).prop_flat_map(|(n, c)| {
            (raw_matrix(n, c), raw_matrix(n, c), raw_matrix(n, c), raw_matrix(n, c))
        }),
        k in 1usize..=8,
    ) {
        let n = x.rows();
        let (u, v) = (unitary(&u), unitary(&v));
        let kinds = [NormKind::Trace, NormKind::Frobenius, NormKind::Spectral, NormKind::KyFan(k.min(n))];
        for kind in kinds {
            let nx = ui_norm(&x, kind).unwrap();
            let ny = ui_norm(&y, kind).unwrap();
            prop_assert!(ui_norm(&(&x + &y), kind).unwrap() <= (nx + ny) * (1.0 + 1e-12));
            let rotated = &(&u * &x) * &v;
            prop_assert!((ui_norm(&rotated, kind).unwrap() - nx).abs() <= 1e-10 * nx.max(1.0));
        }
    }

    #[test]
    fn sharp_is_symmetric_under_swap((a, b, _) in triple(1..=6), v in 0.0f64..=1.0) {
        let ab = sharp(&a, &b, v).unwrap();
        let ba = sharp(&b, &a, 1.0 - v).unwrap();
        prop_assert!(rel_frobenius(ab.matrix(), ba.matrix()) <= 1e-9);
        prop_assert!(rel_frobenius(sharp(&a, &b, 0.0).unwrap().matrix(), a.matrix()) <= 1e-9);
        prop_assert!(rel_frobenius(sharp(&a, &b, 1.0).unwrap().matrix(), b.matrix()) <= 1e-9);
        let p = ScalarFn::new(move |x: f64| x.powf(v)).on(0.0, f64::INFINITY);
        prop_assert!(rel_frobenius(&sharp_f(&a, &b, &p).unwrap(), ab.matrix()) <= 1e-9);
        let id = ScalarFn::new(|x: f64| x).on(0.0, f64::INFINITY);
        prop_assert!(rel_frobenius(&sharp_f(&a, &b, &id).unwrap(), b.matrix()) <= 1e-9);
        let h = heinz(&a, &b, v).unwrap();
        prop_assert!(rel_frobenius(&h, &heinz(&a, &b, 1.0 - v).unwrap()) <= 1e-12);
    }

    #[test]
    fn calculus_composes((a, _, _) in triple(1..=6)) {
        let g = ScalarFn::new(|x: f64| x.sqrt() + 0.5).on(0.0, f64::INFINITY);
        let f = ScalarFn::new(|x: f64| x.ln()).on(1e-300, f64::INFINITY);
        let fg = ScalarFn::new(|x: f64| (x.sqrt() + 0.5).ln()).on(0.0, f64::INFINITY);
        let inner = HermitianPd::new(calculus(&a, &g).unwrap()).unwrap();
        let twice = calculus(&inner, &f).unwrap();
        let once = calculus(&a, &fg).unwrap();
        prop_assert!((&twice - &once).frobenius() <= 1e-9 * once.frobenius().max(1.0));
    }

    #[test]
    fn frac_power_inverts((a, _, _) in triple(1..=6), p in prop_oneof![-2.0f64..-0.1, 0.1f64..2.0]) {
        let back = frac_power(&frac_power(&a, p), 1.0 / p);
        prop_assert!(rel_frobenius(back.matrix(), a.matrix()) <= 1e-8);
        prop_assert!(rel_frobenius(frac_power(&a, 1.0).matrix(), a.matrix()) <= 1e-12);
    }

    #[test]
    fn commuting_means_are_entrywise(
        d in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..=6),
        v in 0.0f64..=1.0,
    ) {
        let a: Vec<f64> = d.iter().map(|p| 10f64.powf(p.0)).collect();
        let b: Vec<f64> = d.iter().map(|p| 10f64.powf(p.1)).collect();
        let (ma, mb) = (diag_pd(&a), diag_pd(&b));
        let s = sharp(&ma, &mb, v).unwrap();
        let h = heinz(&ma, &mb, v).unwrap();
        let m = nabla(&ma, &mb, v).unwrap();
        let sf = sharp_f(&ma, &mb, &f_min()).unwrap();
        for i in 0..a.len() {
            let (x, y) = (a[i], b[i]);
            let close = |got: f64, want: f64| (got - want).abs() <= 1e-10 * want.abs().max(x.max(y));
            prop_assert!(close(s.matrix()[(i, i)].re, x.powf(1.0 - v) * y.powf(v)));
            prop_assert!(close(h[(i, i)].re, heinz_scalar(x, y, v)));
            prop_assert!(close(m.matrix()[(i, i)].re, nabla_scalar(x, y, v)));
            prop_assert!(close(sf[(i, i)].re, x.min(y) * (y / x).ln().powi(2)));
        }
    }

    #[test]
    fn loewner_is_antisymmetric((a, b, _) in triple(1..=5), t in 0.0f64..1.0) {
        // B_t = A + t (B - A) pushed toward A; both orders hold only when close.
        let bt = &a.matrix().scale(1.0 - t * 1e-12) + &b.matrix().scale(t * 1e-12);
        let tol = 1e-8;
        let up = loewner_leq(a.matrix(), &bt, tol).unwrap();
        let down = loewner_leq(&bt, a.matrix(), tol).unwrap();
        if up.holds && down.holds {
            let scale = a.matrix().inf_norm() + bt.inf_norm();
            prop_assert!((a.matrix() - &bt).frobenius() <= tol * scale * (a.dim() as f64));
        }
        let ab_up = loewner_leq(a.matrix(), b.matrix(), tol).unwrap();
        let ab_down = loewner_leq(b.matrix(), a.matrix(), tol).unwrap();
        if ab_up.holds && ab_down.holds {
            let scale = a.matrix().inf_norm() + b.matrix().inf_norm();
            prop_assert!((a.matrix() - b.matrix()).frobenius() <= tol * scale * (a.dim() as f64));
        }
    }
}
