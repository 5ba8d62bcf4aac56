//! JSON matrix fixtures: `{ "dim": n, "real": [[..]], "imag": [[..]] }`,
//! row-major, with `imag` omitted for real matrices.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::dense::Matrix;
use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFixture {
    pub dim: usize,
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

impl MatrixFixture {
    pub fn from_matrix<T: Real>(m: &Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Fixture(format!(
                "matrix is {}x{}, not square",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let grid = |part: fn(&Complex<T>) -> T| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| part(&m[(i, j)]).to_f64().unwrap_or(f64::NAN))
                        .collect()
                })
                .collect()
        };
        Ok(Self {
            dim: n,
            real: grid(|z| z.re),
            imag: if m.is_real() {
                None
            } else {
                Some(grid(|z| z.im))
            },
        })
    }

    pub fn to_matrix<T: Real>(&self) -> Result<Matrix<T>> {
        let n = self.dim;
        let shape_ok = |g: &[Vec<f64>]| g.len() == n && g.iter().all(|r| r.len() == n);
        if !shape_ok(&self.real) {
            return Err(Error::Fixture(format!("`real` is not {n}x{n}")));
        }
        if let Some(im) = &self.imag {
            if !shape_ok(im) {
                return Err(Error::Fixture(format!("`imag` is not {n}x{n}")));
            }
        }
        let cvt =
            |x: f64| T::from_f64(x).ok_or_else(|| Error::Fixture(format!("{x} not representable")));
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let im = match &self.imag {
                    Some(g) => cvt(g[i][j])?,
                    None => T::zero(),
                };
                data.push(Complex::new(cvt(self.real[i][j])?, im));
            }
        }
        let m = Matrix::new(n, n, data)?;
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fixtures serialize")
    }
}
