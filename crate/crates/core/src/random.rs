//! Seeded random operators for tests and spot checks.

use crate::matrix::{CMatrix, HermitianOperator};
use crate::scalar::Scalar;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub use rand::rngs::StdRng;

/// The seeding convention used across the crate.
pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Square matrix of iid standard complex Gaussian entries.
pub fn ginibre<S: Scalar>(d: usize, rng: &mut impl Rng) -> CMatrix<S> {
    CMatrix::from_fn(d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(S::from_config(re), S::from_config(im))
    })
}

/// (G + G^H) / 2 of a Ginibre draw; exactly Hermitian.
pub fn random_hermitian<S: Scalar>(d: usize, rng: &mut impl Rng) -> HermitianOperator<S> {
    HermitianOperator::symmetrized(&ginibre(d, rng))
}

/// G G^H normalized to unit trace; a random density matrix.
pub fn random_density<S: Scalar>(d: usize, rng: &mut impl Rng) -> HermitianOperator<S> {
    let g = ginibre::<S>(d, rng);
    let m = g.mul(&g.adjoint());
    let tr = m.trace().re;
    let rho = m.scaled(Complex::new(S::one() / tr, S::zero()));
    HermitianOperator::new_with_eps(rho, S::epsilon()).expect("G G^H is Hermitian by construction")
}
