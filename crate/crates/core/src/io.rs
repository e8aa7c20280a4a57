//! JSON and CSV encodings shared with the command-line tool.
//!
//! A matrix is `{"d": n, "entries": [[[re, im], ...], ...]}` in row-major
//! order. KD distributions serialize to CSV lines `j,k,re,im` with 1-based
//! indices and 12 significant digits.

use crate::dft::KdDistribution;
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix<S: Scalar>(m: &CMatrix<S>) -> Self {
        let d = m.dim();
        let entries = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let z = m[(r, c)];
                        [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
                    })
                    .collect()
            })
            .collect();
        Self { d, entries }
    }

    pub fn to_matrix<S: Scalar>(&self) -> Result<CMatrix<S>, Error> {
        if self.d == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.entries.len() != self.d {
            return Err(Error::DimMismatch(self.entries.len(), self.d));
        }
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.d {
                return Err(Error::RaggedMatrix {
                    row: r,
                    expected: self.d,
                    got: row.len(),
                });
            }
        }
        Ok(CMatrix::from_fn(self.d, |r, c| {
            let [re, im] = self.entries[r][c];
            Complex::new(S::from_config(re), S::from_config(im))
        }))
    }
}

pub fn read_matrix_json<S: Scalar>(text: &str) -> Result<CMatrix<S>, Error> {
    let mj: MatrixJson = serde_json::from_str(text)?;
    mj.to_matrix()
}

pub fn write_matrix_json<S: Scalar>(m: &CMatrix<S>) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(m)).expect("matrix serializes")
}

/// Scientific notation with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn kd_csv<S: Scalar>(q: &KdDistribution<S>) -> String {
    let d = q.dim();
    let mut out = String::from("j,k,re,im\n");
    for j in 1..=d {
        for k in 1..=d {
            let z = q.value(j, k);
            out.push_str(&format!(
                "{},{},{},{}\n",
                j,
                k,
                fmt_sig(z.re.to_f64_lossy()),
                fmt_sig(z.im.to_f64_lossy())
            ));
        }
    }
    out
}
