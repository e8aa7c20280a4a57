use kdft::decompose::{constructive, least_squares, span_rank, SPAN_DIM_CAP};
use kdft::dft::{DftContext, ToleranceConfig};
use kdft::error::Error;
use kdft::kdreal::{project_to_vkdr, random_kdreal};
use kdft::matrix::{CMatrix, HermitianOperator};
use kdft::numtheory;
use kdft::pure_states::build_state_a_form;
use kdft::random::random_hermitian;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn reconstruct(dec: &kdft::decompose::Decomposition<f64>, ctx: &DftContext<f64>) -> CMatrix<f64> {
    let mut out = CMatrix::<f64>::zeros(ctx.dim());
    for &(desc, w) in &dec.terms {
        let p = build_state_a_form(&desc, ctx).unwrap().projector();
        out.add_scaled_assign(Complex64::new(w, 0.0), &p);
    }
    out
}

#[test]
fn off_diagonal_pair_in_d2_has_the_known_weights() {
    // |a_2><a_1| + |a_1><a_2| = -P(2,1,1,1) + P(2,1,2,1).
    let ctx = DftContext::<f64>::new(2).unwrap();
    let mut f = CMatrix::<f64>::zeros(2);
    f[(0, 1)] = Complex64::new(1.0, 0.0);
    f[(1, 0)] = Complex64::new(1.0, 0.0);
    let f = HermitianOperator::new(f).unwrap();
    let dec = constructive(&f, &ctx, &ToleranceConfig::default()).unwrap();
    assert_eq!(dec.terms.len(), 2);
    let (d0, w0) = dec.terms[0];
    let (d1, w1) = dec.terms[1];
    assert_eq!((d0.d1(), d0.d2(), d0.j(), d0.k()), (2, 1, 1, 1));
    assert_eq!(w0, -1.0);
    assert_eq!((d1.d1(), d1.d2(), d1.j(), d1.k()), (2, 1, 2, 1));
    assert_eq!(w1, 1.0);
    assert!(dec.residual < 1e-15);
    assert_eq!(dec.coefficient_sum, 0.0);
}

#[test]
fn diagonal_operators_decompose_onto_a_basis_projectors() {
    let ctx = DftContext::<f64>::new(5).unwrap();
    let mut f = CMatrix::<f64>::zeros(5);
    for k in 0..5 {
        f[(k, k)] = Complex64::new(k as f64 - 1.5, 0.0);
    }
    let f = HermitianOperator::new(f).unwrap();
    let dec = constructive(&f, &ctx, &ToleranceConfig::default()).unwrap();
    for (desc, w) in &dec.terms {
        assert_eq!(desc.d1(), 1, "only trivial-splitting projectors appear");
        assert_eq!(*w, desc.k() as f64 - 1.0 - 1.5);
    }
    assert!(dec.residual == 0.0);
}

#[test]
fn constructive_round_trips_random_members() {
    let tol = ToleranceConfig::default();
    for d in 1..=12usize {
        let ctx = DftContext::<f64>::new(d).unwrap();
        for seed in 0..20u64 {
            let f = random_kdreal::<f64>(d, 1000 * d as u64 + seed).unwrap();
            let dec = constructive(&f, &ctx, &tol).unwrap();
            assert!(
                dec.residual < 1e-11,
                "d = {d}, seed {seed}: residual {:.2e}",
                dec.residual
            );
            assert!(
                (dec.coefficient_sum - f.trace().re).abs() < 1e-11,
                "d = {d}, seed {seed}: weight sum vs trace"
            );
        }
    }
}

#[test]
fn constructive_rejects_non_members() {
    let ctx = DftContext::<f64>::new(4).unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    let f = random_hermitian::<f64>(4, &mut rng);
    match constructive(&f, &ctx, &ToleranceConfig::default()) {
        Err(Error::NotKdReal { j, k, j2, k2, defect }) => {
            assert_eq!(k2, j);
            assert_eq!(j2, (2 * j + 4 - k - 1) % 4 + 1);
            assert!(defect > 1e-10);
        }
        other => panic!("expected a membership rejection, got {other:?}"),
    }
}

#[test]
fn least_squares_matches_constructive_on_members() {
    for d in [2usize, 3, 6, 8] {
        let ctx = DftContext::<f64>::new(d).unwrap();
        let f = random_kdreal::<f64>(d, 500 + d as u64).unwrap();
        let dec = least_squares(&f, &ctx).unwrap();
        assert!(dec.residual < 1e-8, "d = {d}: residual {:.2e}", dec.residual);
        assert!(
            (dec.coefficient_sum - f.trace().re).abs() < 1e-8,
            "d = {d}: weight sum vs trace"
        );
    }
}

#[test]
fn least_squares_reconstruction_is_the_subspace_projection() {
    // For a generic Hermitian input, the best projector combination equals
    // the orthogonal projection onto the (Hermitian) KD-real subspace.
    let mut rng = StdRng::seed_from_u64(37);
    for d in [3usize, 4, 6] {
        let ctx = DftContext::<f64>::new(d).unwrap();
        let f = random_hermitian::<f64>(d, &mut rng);
        let dec = least_squares(&f, &ctx).unwrap();
        let recon = reconstruct(&dec, &ctx);
        let proj = project_to_vkdr(&f).unwrap();
        assert!(
            recon.max_abs_diff(proj.matrix()) < 1e-6,
            "d = {d}: {:.2e}",
            recon.max_abs_diff(proj.matrix())
        );
        // And the reported residual is the distance to that projection.
        assert!(
            (dec.residual - f.matrix().max_abs_diff(proj.matrix())).abs() < 1e-6,
            "d = {d}"
        );
    }
}

#[test]
fn span_rank_is_the_gcd_sum() {
    for d in 1..=12usize {
        let ctx = DftContext::<f64>::new(d).unwrap();
        assert_eq!(
            span_rank(&ctx).unwrap() as u64,
            numtheory::gcd_sum(d as u64).unwrap(),
            "d = {d}"
        );
    }
}

#[test]
fn caps_are_enforced() {
    let ctx = DftContext::<f64>::new(SPAN_DIM_CAP + 1).unwrap();
    assert!(matches!(
        span_rank(&ctx),
        Err(Error::DimensionCap { cap: SPAN_DIM_CAP, .. })
    ));
    let f = random_kdreal::<f64>(SPAN_DIM_CAP + 1, 1).unwrap();
    assert!(matches!(
        least_squares(&f, &ctx),
        Err(Error::DimensionCap { .. })
    ));
}

#[test]
fn pruning_drops_negligible_weights() {
    // The zero operator decomposes with no terms at all.
    let ctx = DftContext::<f64>::new(6).unwrap();
    let f = HermitianOperator::new(CMatrix::<f64>::zeros(6)).unwrap();
    let dec = constructive(&f, &ctx, &ToleranceConfig::default()).unwrap();
    assert!(dec.terms.is_empty());
    assert_eq!(dec.residual, 0.0);
    assert_eq!(dec.coefficient_sum, 0.0);
}
