//! The transition-matrix context: roots of unity, the discrete Fourier
//! transform matrix, KD distributions, and their classification.
//!
//! Basis labels are 1-based throughout: the transition matrix is
//! `U[j][k] = omega_d^{jk} / sqrt(d)` for `j, k = 1..=d`, so the top-left
//! entry is `omega_d / sqrt(d)`, not `1 / sqrt(d)`. With `F` an operator
//! written in the a-basis, the KD distribution is
//! `Q[j][k] = <a_j|F|b_k><b_k|a_j>`; its rows sum to the a-basis diagonal of
//! `F`, its columns to the b-basis diagonal, and the grand total to `tr F`.

use crate::error::Error;
use crate::matrix::CMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Default upper bound on the dimension of a context.
pub const DEFAULT_DIM_CAP: usize = 512;

/// e^{i 2 pi e / m}, exact at the four quarter turns.
fn unit_root_pow<S: Scalar>(m: usize, e: i64) -> Complex<S> {
    let r = e.rem_euclid(m as i64) as usize;
    let zero = S::zero();
    let one = S::one();
    if (4 * r).is_multiple_of(m) {
        return match 4 * r / m {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        };
    }
    let theta = S::from_config(2.0) * S::PI() * S::from_count(r) / S::from_count(m);
    Complex::from_polar(one, theta)
}

/// Dimension, root-of-unity table, and DFT matrix for one value of d.
#[derive(Clone, Debug)]
pub struct DftContext<S: Scalar> {
    dim: usize,
    omega_pows: Vec<Complex<S>>,
    matrix: CMatrix<S>,
}

impl<S: Scalar> DftContext<S> {
    pub fn new(dim: usize) -> Result<Self, Error> {
        Self::with_cap(dim, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(dim: usize, cap: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let omega_pows: Vec<Complex<S>> =
            (0..dim).map(|r| unit_root_pow(dim, r as i64)).collect();
        let scale = S::one() / S::from_count(dim).sqrt();
        let matrix = CMatrix::from_fn(dim, |r, c| {
            omega_pows[((r + 1) * (c + 1)) % dim] * scale
        });
        Ok(Self {
            dim,
            omega_pows,
            matrix,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// omega_d^e for any integer exponent.
    pub fn omega_pow(&self, e: i64) -> Complex<S> {
        self.omega_pows[e.rem_euclid(self.dim as i64) as usize]
    }

    /// omega_m^e for a divisor m of d, via omega_m = omega_d^{d/m}.
    pub fn root_pow(&self, order: usize, e: i64) -> Complex<S> {
        debug_assert!(order > 0 && self.dim.is_multiple_of(order), "order must divide d");
        self.omega_pow(e * (self.dim / order) as i64)
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    /// Column k (1-based) of the transition matrix: |b_k> in the a-basis.
    pub fn b_vector(&self, k: usize) -> Vec<Complex<S>> {
        assert!((1..=self.dim).contains(&k), "b-basis index out of range");
        (0..self.dim).map(|r| self.matrix[(r, k - 1)]).collect()
    }

    /// max |(U^H U - I)[r][c]|.
    pub fn unitarity_defect(&self) -> S {
        self.matrix
            .adjoint()
            .mul(&self.matrix)
            .max_abs_diff(&CMatrix::identity(self.dim))
    }
}

/// Classification and residual thresholds; all must be strictly positive.
#[derive(Clone, Copy, Debug)]
pub struct ToleranceConfig<S> {
    /// Entrywise threshold for "zero imaginary part" / "negative real part",
    /// also used by the Hermiticity and unit-trace checks of `is_density`.
    pub eps_classify: S,
    /// Max-abs reconstruction residual accepted by the decomposers.
    pub eps_residual: S,
    /// Unitarity slack allowed for a transition matrix.
    pub eps_unitary: S,
}

impl<S: Scalar> Default for ToleranceConfig<S> {
    fn default() -> Self {
        Self {
            eps_classify: S::from_config(1e-10),
            eps_residual: S::from_config(1e-9),
            eps_unitary: S::from_config(1e-12),
        }
    }
}

impl<S: Scalar> ToleranceConfig<S> {
    pub fn new(eps_classify: S, eps_residual: S, eps_unitary: S) -> Result<Self, Error> {
        if eps_classify <= S::zero() || eps_residual <= S::zero() || eps_unitary <= S::zero() {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self {
            eps_classify,
            eps_residual,
            eps_unitary,
        })
    }
}

/// A KD distribution with its marginals precomputed.
#[derive(Clone, Debug)]
pub struct KdDistribution<S> {
    q: CMatrix<S>,
    row_marginals: Vec<Complex<S>>,
    col_marginals: Vec<Complex<S>>,
    total: Complex<S>,
}

impl<S: Scalar> KdDistribution<S> {
    fn from_q(q: CMatrix<S>) -> Self {
        let d = q.dim();
        let zero = Complex::new(S::zero(), S::zero());
        let mut row_marginals = vec![zero; d];
        let mut col_marginals = vec![zero; d];
        let mut total = zero;
        for r in 0..d {
            for c in 0..d {
                let z = q[(r, c)];
                row_marginals[r] += z;
                col_marginals[c] += z;
                total += z;
            }
        }
        Self {
            q,
            row_marginals,
            col_marginals,
            total,
        }
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.q
    }

    /// Entry Q[j][k], 1-based.
    pub fn value(&self, j: usize, k: usize) -> Complex<S> {
        self.q[(j - 1, k - 1)]
    }

    /// Row sums; row j equals <a_j|F|a_j>.
    pub fn row_marginals(&self) -> &[Complex<S>] {
        &self.row_marginals
    }

    /// Column sums; column k equals <b_k|F|b_k>.
    pub fn col_marginals(&self) -> &[Complex<S>] {
        &self.col_marginals
    }

    /// Grand total; equals tr F.
    pub fn total(&self) -> Complex<S> {
        self.total
    }
}

/// KD distribution in matrix form, Q = (F U) entrywise-times conj(U).
pub fn kd_distribution<S: Scalar>(
    f: &CMatrix<S>,
    ctx: &DftContext<S>,
) -> Result<KdDistribution<S>, Error> {
    if f.dim() != ctx.dim() {
        return Err(Error::DimMismatch(f.dim(), ctx.dim()));
    }
    let q = f.mul(ctx.matrix()).hadamard(&ctx.matrix().conj());
    Ok(KdDistribution::from_q(q))
}

/// KD distribution computed entry by entry from the definition
/// Q[j][k] = <a_j|F|b_k><b_k|a_j>. Agrees with `kd_distribution`; kept as an
/// independent code path so the two can cross-check each other.
pub fn kd_distribution_direct<S: Scalar>(
    f: &CMatrix<S>,
    ctx: &DftContext<S>,
) -> Result<KdDistribution<S>, Error> {
    if f.dim() != ctx.dim() {
        return Err(Error::DimMismatch(f.dim(), ctx.dim()));
    }
    let d = f.dim();
    let mut q = CMatrix::zeros(d);
    for k0 in 0..d {
        let bk = ctx.b_vector(k0 + 1);
        let fbk = f.apply(&bk);
        for j0 in 0..d {
            q[(j0, k0)] = fbk[j0] * bk[j0].conj();
        }
    }
    Ok(KdDistribution::from_q(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdClass {
    /// All entries real and nonnegative within tolerance.
    Positive,
    /// All entries real within tolerance, at least one negative.
    RealNotPositive,
    /// At least one entry with nonzero imaginary part.
    Complex,
}

/// Offending entry backing a non-positive classification, 1-based.
#[derive(Clone, Copy, Debug)]
pub struct Witness<S> {
    pub row: usize,
    pub col: usize,
    pub value: Complex<S>,
}

#[derive(Clone, Copy, Debug)]
pub struct Classification<S> {
    pub class: KdClass,
    pub witness: Option<Witness<S>>,
}

/// Classifies a distribution, reporting the largest violation as witness.
/// An imaginary part above `eps_classify` anywhere makes it `Complex`;
/// otherwise a real part below `-eps_classify` makes it `RealNotPositive`.
pub fn classify<S: Scalar>(
    q: &KdDistribution<S>,
    tol: &ToleranceConfig<S>,
) -> Classification<S> {
    let eps = tol.eps_classify;
    let d = q.dim();
    let mut worst_im: Option<(S, usize, usize)> = None;
    let mut worst_neg: Option<(S, usize, usize)> = None;
    for r in 0..d {
        for c in 0..d {
            let z = q.matrix()[(r, c)];
            let im = z.im.abs();
            if im > eps && worst_im.is_none_or(|(w, _, _)| im > w) {
                worst_im = Some((im, r, c));
            }
            let neg = -z.re;
            if neg > eps && worst_neg.is_none_or(|(w, _, _)| neg > w) {
                worst_neg = Some((neg, r, c));
            }
        }
    }
    let witness_at = |r: usize, c: usize| Witness {
        row: r + 1,
        col: c + 1,
        value: q.matrix()[(r, c)],
    };
    if let Some((_, r, c)) = worst_im {
        return Classification {
            class: KdClass::Complex,
            witness: Some(witness_at(r, c)),
        };
    }
    if let Some((_, r, c)) = worst_neg {
        return Classification {
            class: KdClass::RealNotPositive,
            witness: Some(witness_at(r, c)),
        };
    }
    Classification {
        class: KdClass::Positive,
        witness: None,
    }
}

/// Density check: Hermitian, unit trace, and positive semidefinite, each
/// within `eps_classify` (the eigenvalue floor is `-eps_classify`).
pub fn is_density<S: Scalar>(f: &CMatrix<S>, tol: &ToleranceConfig<S>) -> bool {
    let eps = tol.eps_classify;
    if !f.is_hermitian(eps) {
        return false;
    }
    let tr = f.trace();
    if (tr.re - S::one()).abs() > eps || tr.im.abs() > eps {
        return false;
    }
    let min = crate::linalg::hermitian_eigenvalues(f)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    min >= -eps.to_f64_lossy()
}
