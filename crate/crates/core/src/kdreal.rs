//! The subspace of operators with an everywhere-real KD distribution.
//!
//! Membership has a purely combinatorial description: writing F in the
//! a-basis with 1-based labels mod d, the distribution is real iff
//! `F[j][k] == F[2j-k][j]` for every pair. Iterating that substitution steps
//! both indices by n = j - k, so the constraint glues entries along orbits
//! `(a + m g + n, a + m g)` with g = gcd(n, d), giving gcd(n, d) classes on
//! each diagonal n and `sum_n gcd(n, d)` classes in total. That gcd sum is
//! exactly the dimension of the subspace, which `dim_oracle` re-derives
//! numerically without using the combinatorics.

use crate::dft::{kd_distribution_direct, DftContext};
use crate::error::Error;
use crate::linalg;
use crate::matrix::{CMatrix, HermitianOperator};
use crate::numtheory;
use crate::scalar::Scalar;
use nalgebra::DMatrix;
use num_complex::Complex;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

/// `dim_oracle` solves a d^2 x d^2 real system; keep it small.
pub const ORACLE_DIM_CAP: usize = 64;

/// 1-based label of x mod d, in 1..=d.
fn wrap1(x: i64, d: usize) -> usize {
    (x - 1).rem_euclid(d as i64) as usize + 1
}

/// One constraint class: the entries of diagonal n glued together by the
/// membership condition. Members are 1-based (row, col) pairs with
/// row - col = n mod d, listed as (anchor + m g + n, anchor + m g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub n: usize,
    pub anchor: usize,
    pub members: Vec<(usize, usize)>,
}

impl OrbitClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All constraint classes for dimension d, ordered by (n, anchor).
/// There are gcd(n, d) classes of size d / gcd(n, d) for each n in 0..d,
/// so sum_{n} gcd(n, d) classes overall; n = 0 gives the d diagonal
/// singletons (gcd(0, d) = d).
pub fn partition(d: usize) -> Result<Vec<OrbitClass>, Error> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::new();
    for n in 0..d {
        let g = numtheory::gcd(n as u64, d as u64) as usize;
        for anchor in 1..=g {
            let members = (0..d / g)
                .map(|m| {
                    let col = anchor + m * g;
                    (wrap1((col + n) as i64, d), wrap1(col as i64, d))
                })
                .collect();
            out.push(OrbitClass { n, anchor, members });
        }
    }
    Ok(out)
}

/// A failed membership check: entry (j, k) must equal entry (j2, k2) with
/// (j2, k2) = (2j - k, j) mod d, but differs by more than the tolerance.
#[derive(Clone, Copy, Debug)]
pub struct MembershipViolation<S> {
    pub j: usize,
    pub k: usize,
    pub j2: usize,
    pub k2: usize,
    pub lhs: Complex<S>,
    pub rhs: Complex<S>,
}

impl<S: Scalar> MembershipViolation<S> {
    pub fn defect(&self) -> S {
        (self.lhs - self.rhs).norm()
    }
}

/// Checks the entrywise membership condition `F[j][k] == F[2j-k][j]`,
/// returning the first violating pair in row-major order, if any.
pub fn membership_check<S: Scalar>(
    f: &CMatrix<S>,
    eps: S,
) -> Option<MembershipViolation<S>> {
    let d = f.dim();
    for j in 1..=d {
        for k in 1..=d {
            let j2 = wrap1(2 * j as i64 - k as i64, d);
            let k2 = j;
            let lhs = f[(j - 1, k - 1)];
            let rhs = f[(j2 - 1, k2 - 1)];
            if (lhs - rhs).norm() > eps {
                return Some(MembershipViolation {
                    j,
                    k,
                    j2,
                    k2,
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

pub fn is_kdreal<S: Scalar>(f: &CMatrix<S>, eps: S) -> bool {
    membership_check(f, eps).is_none()
}

/// Which structural family a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// |a_k><a_k| from the singleton class (k, k).
    Diagonal { k: usize },
    /// Even d only: the indicator of the self-conjugate class on diagonal
    /// n = d/2, already Hermitian on its own.
    SelfConjugate { anchor: usize },
    /// S + S^H for the class indicator S on diagonal n < d/2.
    Symmetric { n: usize, anchor: usize },
    /// i (S - S^H) for the same class.
    Antisymmetric { n: usize, anchor: usize },
}

#[derive(Clone, Debug)]
pub struct BasisElement<S> {
    pub kind: BasisKind,
    pub matrix: CMatrix<S>,
}

/// Hermitian basis of the KD-real subspace; exactly gcd-sum-of-d elements.
#[derive(Clone, Debug)]
pub struct KdRealBasis<S> {
    d: usize,
    elements: Vec<BasisElement<S>>,
}

impl<S: Scalar> KdRealBasis<S> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement<S>] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BasisElement<S>> {
        self.elements.iter()
    }
}

/// Indicator matrix of one class: sum of E[row][col] over its members.
fn class_indicator<S: Scalar>(d: usize, class: &OrbitClass) -> CMatrix<S> {
    let mut m = CMatrix::zeros(d);
    let one = Complex::new(S::one(), S::zero());
    for &(r, c) in &class.members {
        m[(r - 1, c - 1)] = one;
    }
    m
}

/// Hermitian basis of the KD-real subspace: the d diagonal projectors, the
/// self-conjugate class indicators on diagonal d/2 (even d), and for every
/// class on a diagonal n < d/2 the pair S + S^H, i (S - S^H).
pub fn hermitian_basis<S: Scalar>(d: usize) -> Result<KdRealBasis<S>, Error> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut elements = Vec::new();
    for k in 1..=d {
        let mut m = CMatrix::zeros(d);
        m[(k - 1, k - 1)] = Complex::new(S::one(), S::zero());
        elements.push(BasisElement {
            kind: BasisKind::Diagonal { k },
            matrix: m,
        });
    }
    let classes = partition(d)?;
    if d.is_multiple_of(2) {
        let half = d / 2;
        for class in classes.iter().filter(|c| c.n == half) {
            elements.push(BasisElement {
                kind: BasisKind::SelfConjugate {
                    anchor: class.anchor,
                },
                matrix: class_indicator(d, class),
            });
        }
    }
    let i = Complex::new(S::zero(), S::one());
    for class in classes.iter().filter(|c| c.n >= 1 && c.n < d - c.n) {
        let s = class_indicator::<S>(d, class);
        let sh = s.adjoint();
        elements.push(BasisElement {
            kind: BasisKind::Symmetric {
                n: class.n,
                anchor: class.anchor,
            },
            matrix: s.add(&sh),
        });
        elements.push(BasisElement {
            kind: BasisKind::Antisymmetric {
                n: class.n,
                anchor: class.anchor,
            },
            matrix: s.sub(&sh).scaled(i),
        });
    }
    Ok(KdRealBasis { d, elements })
}

/// Numerical dimension of the KD-real subspace, derived from the definition
/// alone: parameterize Hermitian matrices by d^2 real coordinates, impose
/// a vanishing imaginary part on every KD entry (computed by the definitional
/// route), and return the nullity of the resulting d^2 x d^2 real system.
/// Rank uses a singular-value cutoff of 1e-8 relative to the largest value.
pub fn dim_oracle<S: Scalar>(ctx: &DftContext<S>) -> Result<usize, Error> {
    let d = ctx.dim();
    if d > ORACLE_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: d,
            cap: ORACLE_DIM_CAP,
        });
    }
    let one = Complex::new(S::one(), S::zero());
    let i = Complex::new(S::zero(), S::one());
    let mut coords: Vec<CMatrix<S>> = Vec::with_capacity(d * d);
    for t in 0..d {
        let mut m = CMatrix::zeros(d);
        m[(t, t)] = one;
        coords.push(m);
    }
    for r in 0..d {
        for c in (r + 1)..d {
            let mut sym = CMatrix::zeros(d);
            sym[(r, c)] = one;
            sym[(c, r)] = one;
            coords.push(sym);
            let mut asym = CMatrix::zeros(d);
            asym[(r, c)] = i;
            asym[(c, r)] = -i;
            coords.push(asym);
        }
    }
    let mut constraints = DMatrix::<f64>::zeros(d * d, d * d);
    for (t, b) in coords.iter().enumerate() {
        let q = kd_distribution_direct(b, ctx)?;
        for j in 0..d {
            for k in 0..d {
                constraints[(j * d + k, t)] = q.matrix()[(j, k)].im.to_f64_lossy();
            }
        }
    }
    Ok(d * d - linalg::rank_svd(constraints, 1e-8))
}

/// Orthogonal projection onto the Hermitian part of the KD-real subspace:
/// every class is averaged, with conjugate classes tied together so the
/// output is exactly Hermitian.
pub fn project_to_vkdr<S: Scalar>(f: &HermitianOperator<S>) -> Result<HermitianOperator<S>, Error> {
    let d = f.dim();
    let classes = partition(d)?;
    let mut out = CMatrix::zeros(d);
    let zero = Complex::new(S::zero(), S::zero());
    for class in &classes {
        match class.n {
            0 => {
                let (r, c) = class.members[0];
                let v = f.matrix()[(r - 1, c - 1)];
                out[(r - 1, c - 1)] = Complex::new(v.re, S::zero());
            }
            n if n < d - n => {
                // Mean over the class and over the transposed positions
                // (which form the partner class on diagonal d - n).
                let mut mu = zero;
                let mut mu_t = zero;
                for &(r, c) in &class.members {
                    mu += f.matrix()[(r - 1, c - 1)];
                    mu_t += f.matrix()[(c - 1, r - 1)];
                }
                let size = Complex::new(S::from_count(class.size()), S::zero());
                let u = (mu / size + (mu_t / size).conj())
                    * Complex::new(S::from_config(0.5), S::zero());
                for &(r, c) in &class.members {
                    out[(r - 1, c - 1)] = u;
                    out[(c - 1, r - 1)] = u.conj();
                }
            }
            n if n == d - n => {
                // Self-conjugate class (n = d/2): closed under transposition,
                // so the projected value is real.
                let mut acc = S::zero();
                for &(r, c) in &class.members {
                    acc += f.matrix()[(r - 1, c - 1)].re;
                }
                let v = Complex::new(acc / S::from_count(class.size()), S::zero());
                for &(r, c) in &class.members {
                    out[(r - 1, c - 1)] = v;
                }
            }
            _ => {} // diagonals n > d/2 are written by their partner class
        }
    }
    Ok(HermitianOperator::new_with_eps(out, S::epsilon())
        .expect("projection output is Hermitian by construction"))
}

/// Seeded random element of the KD-real subspace: a standard normal
/// combination of the Hermitian basis. Exactly Hermitian and exactly a
/// member of the subspace.
pub fn random_kdreal<S: Scalar>(d: usize, seed: u64) -> Result<HermitianOperator<S>, Error> {
    let basis = hermitian_basis::<S>(d)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = CMatrix::zeros(d);
    for el in basis.iter() {
        let x: f64 = rng.sample(StandardNormal);
        out.add_scaled_assign(Complex::new(S::from_config(x), S::zero()), &el.matrix);
    }
    Ok(HermitianOperator::new_with_eps(out, S::epsilon())
        .expect("basis combination is Hermitian by construction"))
}
