//! Numerical backends run in `f64` regardless of the crate's scalar type:
//! generic inputs are converted before any factorization, results converted
//! back by the caller.

use crate::matrix::CMatrix;
use crate::scalar::Scalar;
use nalgebra::{Complex, DMatrix, DVector};

pub(crate) fn to_na<S: Scalar>(m: &CMatrix<S>) -> DMatrix<Complex<f64>> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |r, c| {
        let z = m[(r, c)];
        Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
    })
}

/// Number of singular values above `rel_cutoff` times the largest one.
pub(crate) fn rank_svd(m: DMatrix<f64>, rel_cutoff: f64) -> usize {
    let sv = m.singular_values();
    let smax = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if smax <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_cutoff * smax).count()
}

/// Minimum-norm least-squares solution of A x = b via the pseudoinverse,
/// zeroing singular values below `rel_cutoff` times the largest one.
pub(crate) fn min_norm_lstsq(a: DMatrix<f64>, b: DVector<f64>, rel_cutoff: f64) -> DVector<f64> {
    let svd = a.svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let eps = if smax > 0.0 { rel_cutoff * smax } else { f64::MAX };
    svd.solve(&b, eps).expect("SVD factors were requested")
}

pub(crate) fn hermitian_eigenvalues<S: Scalar>(m: &CMatrix<S>) -> Vec<f64> {
    let eig = to_na(m).symmetric_eigen();
    eig.eigenvalues.iter().copied().collect()
}
