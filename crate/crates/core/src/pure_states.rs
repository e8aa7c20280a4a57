//! Enumeration of the pure KD-positive states.
//!
//! Every such state is labeled by a divisor splitting d = d1 * d2 and a pair
//! (j, k) with 1 <= j <= d1 and 1 <= k <= d2. In the a-basis the state is a
//! uniform superposition over the residue class k mod d2 with d1-th-root
//! phases; the same state expands in the b-basis over the residue class
//! j mod d1, up to the global phase omega_d^{-jk}. Counting descriptors over
//! all splittings gives d * tau(d) states, pairwise distinct.

use crate::dft::DftContext;
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::numtheory;
use crate::scalar::Scalar;
use num_complex::Complex;
use std::fmt;

/// Label (d1, d2, j, k) of a pure KD-positive state in dimension d = d1 * d2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PureStateDescriptor {
    d: usize,
    d1: usize,
    d2: usize,
    j: usize,
    k: usize,
}

impl PureStateDescriptor {
    pub fn new(d: usize, d1: usize, d2: usize, j: usize, k: usize) -> Result<Self, Error> {
        let valid = d >= 1
            && d1 >= 1
            && d2 >= 1
            && d1 * d2 == d
            && (1..=d1).contains(&j)
            && (1..=d2).contains(&k);
        if !valid {
            return Err(Error::InvalidDescriptor { d, d1, d2, j, k });
        }
        Ok(Self { d, d1, d2, j, k })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for PureStateDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d1={}, d2={}, j={}, k={})", self.d1, self.d2, self.j, self.k)
    }
}

/// A pure KD-positive state as a unit vector of a-basis coefficients.
#[derive(Clone, Debug)]
pub struct PureState<S> {
    pub descriptor: PureStateDescriptor,
    pub vector: Vec<Complex<S>>,
}

impl<S: Scalar> PureState<S> {
    pub fn projector(&self) -> CMatrix<S> {
        CMatrix::outer(&self.vector)
    }
}

/// All d * tau(d) descriptors for dimension d, ordered by (d1, j, k).
pub fn enumerate_descriptors(d: usize) -> Result<Vec<PureStateDescriptor>, Error> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::new();
    for d1 in numtheory::divisors(d as u64)? {
        let d1 = d1 as usize;
        let d2 = d / d1;
        for j in 1..=d1 {
            for k in 1..=d2 {
                out.push(PureStateDescriptor { d, d1, d2, j, k });
            }
        }
    }
    Ok(out)
}

/// 0-based position of the 1-based basis label x (labels are periodic mod d).
fn pos0(x: usize, d: usize) -> usize {
    (x - 1) % d
}

/// a-basis construction:
/// psi = e^{i alpha} / sqrt(d1) * sum_{j'=1}^{d1} omega_d1^{j j'} |a_{k + j' d2}>.
pub fn build_state_a_form_with_phase<S: Scalar>(
    desc: &PureStateDescriptor,
    ctx: &DftContext<S>,
    alpha: S,
) -> Result<PureState<S>, Error> {
    let d = ctx.dim();
    if desc.d != d {
        return Err(Error::DimMismatch(desc.d, d));
    }
    let zero = Complex::new(S::zero(), S::zero());
    let mut vector = vec![zero; d];
    let scale = Complex::from_polar(S::one() / S::from_count(desc.d1).sqrt(), alpha);
    for jp in 1..=desc.d1 {
        let pos = pos0(desc.k + jp * desc.d2, d);
        vector[pos] = ctx.root_pow(desc.d1, (desc.j * jp) as i64) * scale;
    }
    Ok(PureState {
        descriptor: *desc,
        vector,
    })
}

pub fn build_state_a_form<S: Scalar>(
    desc: &PureStateDescriptor,
    ctx: &DftContext<S>,
) -> Result<PureState<S>, Error> {
    build_state_a_form_with_phase(desc, ctx, S::zero())
}

/// b-basis construction of the same state:
/// psi = e^{i alpha} omega_d^{-jk} / sqrt(d2)
///       * sum_{k'=1}^{d2} omega_d2^{-k k'} |b_{j + k' d1}>,
/// expanded back into a-basis coefficients through the transition matrix.
/// Equal to the a-form including the global phase.
pub fn build_state_b_form_with_phase<S: Scalar>(
    desc: &PureStateDescriptor,
    ctx: &DftContext<S>,
    alpha: S,
) -> Result<PureState<S>, Error> {
    let d = ctx.dim();
    if desc.d != d {
        return Err(Error::DimMismatch(desc.d, d));
    }
    let zero = Complex::new(S::zero(), S::zero());
    let mut beta = vec![zero; d];
    let global = Complex::from_polar(S::one() / S::from_count(desc.d2).sqrt(), alpha)
        * ctx.omega_pow(-((desc.j * desc.k) as i64));
    for kp in 1..=desc.d2 {
        let pos = pos0(desc.j + kp * desc.d1, d);
        beta[pos] = ctx.root_pow(desc.d2, -((desc.k * kp) as i64)) * global;
    }
    let vector = ctx.matrix().apply(&beta);
    Ok(PureState {
        descriptor: *desc,
        vector,
    })
}

pub fn build_state_b_form<S: Scalar>(
    desc: &PureStateDescriptor,
    ctx: &DftContext<S>,
) -> Result<PureState<S>, Error> {
    build_state_b_form_with_phase(desc, ctx, S::zero())
}

/// Builds every pure KD-positive state for the context's dimension.
/// The states must be pairwise distinct as projectors; any two closer than
/// 1e-6 in max-abs distance abort the catalog.
pub fn catalog<S: Scalar>(ctx: &DftContext<S>) -> Result<Vec<PureState<S>>, Error> {
    let d = ctx.dim();
    let states: Vec<PureState<S>> = enumerate_descriptors(d)?
        .iter()
        .map(|desc| build_state_a_form(desc, ctx))
        .collect::<Result<_, _>>()?;
    // Projector distance screening via overlaps: max-abs distance below 1e-6
    // forces 1 - |<u|v>| <= d^2 * 5e-13, so only near-parallel pairs need the
    // projectors materialized.
    let gate = (d * d) as f64 * 5e-13;
    for i in 0..states.len() {
        for l in (i + 1)..states.len() {
            let mut ov = Complex::new(S::zero(), S::zero());
            for (a, b) in states[i].vector.iter().zip(states[l].vector.iter()) {
                ov += a.conj() * *b;
            }
            if 1.0 - ov.norm().to_f64_lossy() <= gate {
                let dist = states[i]
                    .projector()
                    .max_abs_diff(&states[l].projector())
                    .to_f64_lossy();
                if dist < 1e-6 {
                    return Err(Error::DuplicateCatalogState(
                        states[i].descriptor.to_string(),
                        states[l].descriptor.to_string(),
                    ));
                }
            }
        }
    }
    Ok(states)
}
