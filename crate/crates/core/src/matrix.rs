use crate::error::Error;
use crate::scalar::Scalar;
use num_complex::Complex;
use std::ops::{Deref, Index, IndexMut};

/// Dense square complex matrix, row-major storage, 0-based indexing.
///
/// All public surfaces of the crate that speak about basis labels use 1-based
/// indices; this type is the 0-based workhorse underneath them.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    dim: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(S::zero(), S::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(S::one(), S::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<S>>>) -> Result<Self, Error> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::RaggedMatrix {
                    row: r,
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    /// Rank-one projector |v><v| of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex<S>]) -> Self {
        let dim = v.len();
        Self::from_fn(dim, |r, c| v[r] * v[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for m in 0..d {
                let a = self[(r, m)];
                if a.re == S::zero() && a.im == S::zero() {
                    continue;
                }
                for c in 0..d {
                    out[(r, c)] += a * rhs[(m, c)];
                }
            }
        }
        out
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "Hadamard product dimension mismatch");
        Self::from_fn(self.dim, |r, c| self[(r, c)] * rhs[(r, c)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        Self::from_fn(self.dim, |r, c| self[(r, c)] + rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        Self::from_fn(self.dim, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn scaled(&self, z: Complex<S>) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * z)
    }

    pub fn add_scaled_assign(&mut self, z: Complex<S>, rhs: &Self) {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += z * *b;
        }
    }

    pub fn trace(&self) -> Complex<S> {
        let mut t = Complex::new(S::zero(), S::zero());
        for i in 0..self.dim {
            t += self[(i, i)];
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<S>]) -> Vec<Complex<S>> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        (0..self.dim)
            .map(|r| {
                let mut acc = Complex::new(S::zero(), S::zero());
                for c in 0..self.dim {
                    acc += self[(r, c)] * v[c];
                }
                acc
            })
            .collect()
    }

    pub fn max_abs(&self) -> S {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(S::zero(), S::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> S {
        assert_eq!(self.dim, rhs.dim, "matrix comparison dimension mismatch");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(S::zero(), S::max)
    }

    /// Largest |M[r][c] - conj(M[c][r])| and where it occurs.
    pub fn hermiticity_defect(&self) -> (S, (usize, usize)) {
        let mut worst = S::zero();
        let mut at = (0, 0);
        for r in 0..self.dim {
            for c in r..self.dim {
                let defect = (self[(r, c)] - self[(c, r)].conj()).norm();
                if defect > worst {
                    worst = defect;
                    at = (r, c);
                }
            }
        }
        (worst, at)
    }

    pub fn is_hermitian(&self, eps: S) -> bool {
        self.hermiticity_defect().0 <= eps
    }

    pub fn entries(&self) -> &[Complex<S>] {
        &self.data
    }
}

impl<S> Index<(usize, usize)> for CMatrix<S> {
    type Output = Complex<S>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<S> {
        &self.data[r * self.dim + c]
    }
}

impl<S> IndexMut<(usize, usize)> for CMatrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<S> {
        &mut self.data[r * self.dim + c]
    }
}

/// Standard basis vector e_i (0-based) of length `dim`.
pub fn basis_vector<S: Scalar>(dim: usize, i: usize) -> Vec<Complex<S>> {
    let mut v = vec![Complex::new(S::zero(), S::zero()); dim];
    v[i] = Complex::new(S::one(), S::zero());
    v
}

/// A matrix checked to be Hermitian at construction time.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<S> {
    matrix: CMatrix<S>,
}

impl<S: Scalar> HermitianOperator<S> {
    /// Accepts matrices whose Hermiticity defect is at most 1e-12.
    pub fn new(matrix: CMatrix<S>) -> Result<Self, Error> {
        Self::new_with_eps(matrix, S::from_config(1e-12))
    }

    pub fn new_with_eps(matrix: CMatrix<S>, eps: S) -> Result<Self, Error> {
        let (defect, (r, c)) = matrix.hermiticity_defect();
        if defect > eps {
            return Err(Error::NotHermitian {
                row: r + 1,
                col: c + 1,
                defect: defect.to_f64_lossy(),
            });
        }
        Ok(Self { matrix })
    }

    /// Forces Hermiticity by averaging with the adjoint.
    pub fn symmetrized(matrix: &CMatrix<S>) -> Self {
        let half = Complex::new(S::from_config(0.5), S::zero());
        Self {
            matrix: matrix.add(&matrix.adjoint()).scaled(half),
        }
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<S> {
        self.matrix
    }
}

impl<S> Deref for HermitianOperator<S> {
    type Target = CMatrix<S>;

    fn deref(&self) -> &CMatrix<S> {
        &self.matrix
    }
}
