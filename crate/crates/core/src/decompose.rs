//! Decomposition of KD-real Hermitian operators into real combinations of
//! pure KD-positive projectors.
//!
//! The constructive route works one constraint class at a time. The class
//! indicator S on diagonal n (with g = gcd(n, d) and d1 = d / g) obeys the
//! shift identity
//!
//!   S = sum_{j=1}^{d1} omega_d1^{l j} P_{(d1, g, j, a)},   l = d1 - n / g,
//!
//! where a is the class anchor: weighting the projectors of one residue class
//! by d1-th-root phases collapses their interference pattern onto a single
//! shifted diagonal. A Hermitian member of the subspace is constant on each
//! class, so its class values convert directly into real projector weights:
//! 2 Re(c omega_d1^{l j}) per class pair below the half turn, and c times the
//! sign omega_2^{l j} on the self-conjugate diagonal n = d/2. Off-diagonal
//! weights sum to zero, so the total weight equals the trace.

use crate::dft::{DftContext, ToleranceConfig};
use crate::error::Error;
use crate::kdreal::{membership_check, partition};
use crate::linalg;
use crate::matrix::{CMatrix, HermitianOperator};
use crate::numtheory;
use crate::pure_states::{build_state_a_form, catalog, PureStateDescriptor};
use crate::scalar::Scalar;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use std::collections::BTreeMap;

/// `span_rank` and the least-squares route build a (d tau(d)) x 2d^2 system.
pub const SPAN_DIM_CAP: usize = 32;

/// Weights with magnitude below this are dropped from a decomposition.
const PRUNE_EPS: f64 = 1e-14;

/// A real-weighted list of pure-state projectors reconstructing an operator.
#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    /// Projector weights, sorted by descriptor.
    pub terms: Vec<(PureStateDescriptor, S)>,
    /// Max-abs distance between the weighted sum and the input.
    pub residual: S,
    /// Sum of the weights; equals the trace of the input.
    pub coefficient_sum: S,
}

fn finish<S: Scalar>(
    f: &CMatrix<S>,
    ctx: &DftContext<S>,
    weights: BTreeMap<PureStateDescriptor, S>,
) -> Result<Decomposition<S>, Error> {
    let prune = S::from_config(PRUNE_EPS);
    let terms: Vec<(PureStateDescriptor, S)> = weights
        .into_iter()
        .filter(|&(_, w)| w.abs() >= prune)
        .collect();
    let mut recon = CMatrix::zeros(f.dim());
    for &(desc, w) in &terms {
        let state = build_state_a_form(&desc, ctx)?;
        recon.add_scaled_assign(Complex::new(w, S::zero()), &state.projector());
    }
    let residual = recon.max_abs_diff(f);
    let coefficient_sum = terms.iter().map(|&(_, w)| w).sum();
    Ok(Decomposition {
        terms,
        residual,
        coefficient_sum,
    })
}

/// Exact class-by-class decomposition of a KD-real Hermitian operator.
///
/// Rejects inputs that fail the membership check at `eps_classify`, and
/// rejects its own output if the reconstruction residual exceeds
/// `eps_residual` (which would indicate a numerical breakdown, not a
/// property of the input).
pub fn constructive<S: Scalar>(
    f: &HermitianOperator<S>,
    ctx: &DftContext<S>,
    tol: &ToleranceConfig<S>,
) -> Result<Decomposition<S>, Error> {
    let d = ctx.dim();
    if f.dim() != d {
        return Err(Error::DimMismatch(f.dim(), d));
    }
    if let Some(v) = membership_check(f.matrix(), tol.eps_classify) {
        return Err(Error::NotKdReal {
            j: v.j,
            k: v.k,
            j2: v.j2,
            k2: v.k2,
            defect: v.defect().to_f64_lossy(),
        });
    }
    let mut weights: BTreeMap<PureStateDescriptor, S> = BTreeMap::new();
    for class in partition(d)? {
        let n = class.n;
        if n > d - n {
            continue; // covered as the conjugate of diagonal d - n
        }
        let a = class.anchor;
        if n == 0 {
            let desc = PureStateDescriptor::new(d, 1, d, 1, a)?;
            *weights.entry(desc).or_insert_with(S::zero) += f.matrix()[(a - 1, a - 1)].re;
            continue;
        }
        let g = numtheory::gcd(n as u64, d as u64) as usize;
        let d1 = d / g;
        let l = (d1 - n / g) as i64;
        let (r0, c0) = class.members[0];
        let c = f.matrix()[(r0 - 1, c0 - 1)];
        if n < d - n {
            for j in 1..=d1 {
                let w = (c * ctx.root_pow(d1, l * j as i64)).re;
                let desc = PureStateDescriptor::new(d, d1, g, j, a)?;
                *weights.entry(desc).or_insert_with(S::zero) += w + w;
            }
        } else {
            // Self-conjugate diagonal n = d/2: the indicator is already
            // Hermitian, so the class value enters once, not doubled.
            for j in 1..=2usize {
                let sign = ctx.root_pow(2, l * j as i64).re;
                let desc = PureStateDescriptor::new(d, 2, g, j, a)?;
                *weights.entry(desc).or_insert_with(S::zero) += c.re * sign;
            }
        }
    }
    let dec = finish(f.matrix(), ctx, weights)?;
    if dec.residual > tol.eps_residual {
        return Err(Error::ResidualExceeded {
            residual: dec.residual.to_f64_lossy(),
            limit: tol.eps_residual.to_f64_lossy(),
        });
    }
    Ok(dec)
}

/// Numerical route: minimum-norm least-squares weights over the full
/// catalog of pure KD-positive projectors, solved in f64 with singular
/// values below 1e-8 of the largest discarded. Works for any Hermitian
/// input; the residual reports the distance to the projector span.
pub fn least_squares<S: Scalar>(
    f: &HermitianOperator<S>,
    ctx: &DftContext<S>,
) -> Result<Decomposition<S>, Error> {
    let d = ctx.dim();
    if f.dim() != d {
        return Err(Error::DimMismatch(f.dim(), d));
    }
    if d > SPAN_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: d,
            cap: SPAN_DIM_CAP,
        });
    }
    let states = catalog(ctx)?;
    let mut a = DMatrix::<f64>::zeros(2 * d * d, states.len());
    for (t, state) in states.iter().enumerate() {
        let p = state.projector();
        for r in 0..d {
            for cc in 0..d {
                let z = p[(r, cc)];
                a[(2 * (r * d + cc), t)] = z.re.to_f64_lossy();
                a[(2 * (r * d + cc) + 1, t)] = z.im.to_f64_lossy();
            }
        }
    }
    let mut b = DVector::<f64>::zeros(2 * d * d);
    for r in 0..d {
        for cc in 0..d {
            let z = f.matrix()[(r, cc)];
            b[2 * (r * d + cc)] = z.re.to_f64_lossy();
            b[2 * (r * d + cc) + 1] = z.im.to_f64_lossy();
        }
    }
    let x = linalg::min_norm_lstsq(a, b, 1e-8);
    let mut weights: BTreeMap<PureStateDescriptor, S> = BTreeMap::new();
    for (t, state) in states.iter().enumerate() {
        *weights.entry(state.descriptor).or_insert_with(S::zero) += S::from_config(x[t]);
    }
    finish(f.matrix(), ctx, weights)
}

/// Rank of the projector family as vectors in R^{2 d^2}; equals the gcd-sum
/// of d because the span of the catalog is the whole KD-real subspace.
/// Singular values below 1e-8 of the largest are treated as zero.
pub fn span_rank<S: Scalar>(ctx: &DftContext<S>) -> Result<usize, Error> {
    let d = ctx.dim();
    if d > SPAN_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: d,
            cap: SPAN_DIM_CAP,
        });
    }
    let states = catalog(ctx)?;
    let mut a = DMatrix::<f64>::zeros(states.len(), 2 * d * d);
    for (t, state) in states.iter().enumerate() {
        let p = state.projector();
        for r in 0..d {
            for cc in 0..d {
                let z = p[(r, cc)];
                a[(t, 2 * (r * d + cc))] = z.re.to_f64_lossy();
                a[(t, 2 * (r * d + cc) + 1)] = z.im.to_f64_lossy();
            }
        }
    }
    Ok(linalg::rank_svd(a, 1e-8))
}
