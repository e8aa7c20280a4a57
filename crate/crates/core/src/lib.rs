//! Kirkwood-Dirac quasiprobability distributions for the discrete Fourier
//! transform, in any dimension d.
//!
//! The KD distribution of an operator F over a pair of bases related by the
//! transition matrix `U[j][k] = omega_d^{jk} / sqrt(d)` is
//! `Q[j][k] = <a_j|F|b_k><b_k|a_j>`. This crate computes and classifies such
//! distributions and implements the structure theory around the states whose
//! distribution is everywhere nonnegative:
//!
//! - [`numtheory`]: exact divisor counts, totients, and the gcd-sum function
//!   that measures the KD-real subspace.
//! - [`dft`]: the transition-matrix context, KD distributions, marginals,
//!   and classification into positive / real / complex.
//! - [`pure_states`]: the catalog of all d tau(d) pure KD-positive states,
//!   each labeled by a divisor splitting d = d1 d2 and a phase pair (j, k).
//! - [`kdreal`]: the subspace of operators with a real KD distribution, its
//!   constraint-class combinatorics, Hermitian basis, orthogonal projection,
//!   and an independent numerical dimension oracle.
//! - [`decompose`]: constructive and least-squares expansions of KD-real
//!   Hermitian operators as real combinations of KD-positive projectors.
//!
//! Basis labels, descriptors, and reported witnesses are 1-based; matrix
//! storage is 0-based. Everything is generic over the real scalar through
//! [`Scalar`] (`f32` or `f64`), with `f64` aliases at the crate root.
//!
//! ```
//! use kdft::{decompose, kdreal, DftContext64, Tolerance64};
//!
//! let ctx = DftContext64::new(6).unwrap();
//! let f = kdreal::random_kdreal(6, 7).unwrap();
//! let dec = decompose::constructive(&f, &ctx, &Tolerance64::default()).unwrap();
//! assert!(dec.residual < 1e-10);
//! assert!((dec.coefficient_sum - f.trace().re).abs() < 1e-10);
//! ```

#![forbid(unsafe_code)]

pub mod decompose;
pub mod dft;
pub mod error;
pub mod io;
pub mod kdreal;
mod linalg;
pub mod matrix;
pub mod numtheory;
pub mod pure_states;
pub mod random;
pub mod scalar;

pub use error::Error;
pub use scalar::Scalar;

pub type C32 = num_complex::Complex<f32>;
pub type C64 = num_complex::Complex<f64>;

pub type CMatrix64 = matrix::CMatrix<f64>;
pub type Hermitian64 = matrix::HermitianOperator<f64>;
pub type DftContext64 = dft::DftContext<f64>;
pub type KdDistribution64 = dft::KdDistribution<f64>;
pub type Tolerance64 = dft::ToleranceConfig<f64>;
pub type PureState64 = pure_states::PureState<f64>;
pub type KdRealBasis64 = kdreal::KdRealBasis<f64>;
pub type Decomposition64 = decompose::Decomposition<f64>;
