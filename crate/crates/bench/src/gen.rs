//! Seeded instance generators.
//!
//! Every generator takes a single `u64` seed and draws from a fresh
//! [`SplitMix64`] stream seeded with it, so an instance is reproducible from
//! its seed alone. Per-trial seeds come from [`trial_seed`], which hashes
//! `(suite seed, stream, trial index)` with the SplitMix64 finalizer.

use jensen_core::{HermitianPd, Matrix, YoungInstance};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

/// SplitMix64 output function.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` in `stream` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, stream: u64, index: u64) -> u64 {
    mix(mix(seed ^ mix(stream)) ^ index)
}

fn log_uniform(rng: &mut SplitMix64, range_exp: f64) -> f64 {
    10f64.powf(rng.random_range(-range_exp..=range_exp))
}

/// `a, b` log-uniform on `[10^-r, 10^r]` and `v` uniform on `[0, 1]`.
pub fn gen_scalar(seed: u64, range_exp: f64) -> YoungInstance<f64> {
    assert!(range_exp > 0.0, "range_exp must be positive");
    let mut rng = SplitMix64::seed_from_u64(seed);
    let a = log_uniform(&mut rng, range_exp);
    let b = log_uniform(&mut rng, range_exp);
    let v = rng.random_range(0.0..=1.0);
    YoungInstance::new(a, b, v).expect("generated instance is in range")
}

/// Matrix with independent standard normal entries (complex when asked).
pub fn gen_general(seed: u64, dim: usize, complex: bool) -> Matrix<f64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    Matrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = if complex {
            rng.sample(StandardNormal)
        } else {
            0.0
        };
        Complex::new(re, im)
    })
}

/// Unitary factor of the QR decomposition of a Gaussian matrix, with the
/// phases fixed so that `R` has a positive diagonal.
pub fn gen_unitary(seed: u64, dim: usize, complex: bool) -> Matrix<f64> {
    let g = gen_general(seed, dim, complex);
    let mut q: Vec<Vec<Complex<f64>>> = (0..dim)
        .map(|j| (0..dim).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..dim {
        // Two passes of modified Gram-Schmidt keep Q unitary to rounding.
        for _ in 0..2 {
            for p in 0..j {
                let dot: Complex<f64> = (0..dim).map(|i| q[p][i].conj() * q[j][i]).sum();
                let (done, rest) = q.split_at_mut(j);
                for (x, &y) in rest[0].iter_mut().zip(&done[p]) {
                    *x -= y * dot;
                }
            }
        }
        let norm = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut q[j] {
            *z /= norm;
        }
    }
    Matrix::from_fn(dim, dim, |i, j| q[j][i])
}

/// A generated positive-definite matrix and the spectrum planted in it.
#[derive(Debug, Clone)]
pub struct PlantedPd {
    pub pd: HermitianPd<f64>,
    pub spectrum: Vec<f64>,
}

impl PlantedPd {
    pub fn planted_condition(&self) -> f64 {
        let max = self.spectrum.iter().copied().fold(f64::MIN, f64::max);
        let min = self.spectrum.iter().copied().fold(f64::MAX, f64::min);
        max / min
    }
}

/// `Q diag(λ) Q*` with `λ = s · cond_max^{u_i}`, `u_i` uniform on `[0, 1]`
/// and the scale `s` log-uniform on `[0.1, 10]`.
pub fn gen_pd_planted(seed: u64, dim: usize, cond_max: f64, complex: bool) -> PlantedPd {
    assert!((1..=64).contains(&dim), "dim must lie in 1..=64");
    assert!(cond_max >= 1.0, "cond_max must be at least 1");
    let mut rng = SplitMix64::seed_from_u64(mix(seed));
    let scale = log_uniform(&mut rng, 1.0);
    let spectrum: Vec<f64> = (0..dim)
        .map(|_| scale * cond_max.powf(rng.random_range(0.0..=1.0)))
        .collect();
    let matrix = if cond_max == 1.0 {
        Matrix::from_diag(&vec![scale; dim])
    } else {
        Matrix::congruence_diag(&gen_unitary(seed, dim, complex), &spectrum)
    };
    PlantedPd {
        pd: HermitianPd::new(matrix).expect("planted spectrum is positive"),
        spectrum,
    }
}

pub fn gen_pd(seed: u64, dim: usize, cond_max: f64, complex: bool) -> HermitianPd<f64> {
    gen_pd_planted(seed, dim, cond_max, complex).pd
}
