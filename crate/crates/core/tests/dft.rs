use approx::assert_abs_diff_eq;
use kdft::dft::{
    classify, is_density, kd_distribution, kd_distribution_direct, DftContext, KdClass,
    ToleranceConfig, DEFAULT_DIM_CAP,
};
use kdft::error::Error;
use kdft::kdreal;
use kdft::matrix::CMatrix;
use kdft::random::{random_density, random_hermitian};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn context_rejects_bad_dimensions() {
    assert!(matches!(
        DftContext::<f64>::new(0),
        Err(Error::ZeroDimension)
    ));
    assert!(matches!(
        DftContext::<f64>::new(DEFAULT_DIM_CAP + 1),
        Err(Error::DimensionCap { .. })
    ));
    assert!(DftContext::<f64>::with_cap(600, 600).is_ok());
}

#[test]
fn transition_matrix_d2_is_exact() {
    // Top-left entry is omega_2 / sqrt(2) = -1/sqrt(2), not +1/sqrt(2).
    let ctx = DftContext::<f64>::new(2).unwrap();
    let s = 1.0 / 2f64.sqrt();
    let u = ctx.matrix();
    assert_eq!(u[(0, 0)], Complex64::new(-s, 0.0));
    assert_eq!(u[(0, 1)], Complex64::new(s, 0.0));
    assert_eq!(u[(1, 0)], Complex64::new(s, 0.0));
    assert_eq!(u[(1, 1)], Complex64::new(s, 0.0));
}

#[test]
fn transition_matrix_entry_convention() {
    // U[j][k] = omega_d^{j k} / sqrt(d) with 1-based indices.
    for d in 1..=12usize {
        let ctx = DftContext::<f64>::new(d).unwrap();
        let s = 1.0 / (d as f64).sqrt();
        for j in 1..=d {
            for k in 1..=d {
                let expect = ctx.omega_pow((j * k) as i64) * s;
                let got = ctx.matrix()[(j - 1, k - 1)];
                assert!((got - expect).norm() < 1e-15, "d={d} j={j} k={k}");
            }
        }
    }
}

#[test]
fn transition_matrix_is_symmetric_and_unitary() {
    for d in 1..=24usize {
        let ctx = DftContext::<f64>::new(d).unwrap();
        let u = ctx.matrix();
        assert!(u.max_abs_diff(&u.transpose()) < 1e-15, "symmetry, d={d}");
        assert!(ctx.unitarity_defect() < 1e-13, "unitarity, d={d}");
    }
}

#[test]
fn quarter_turn_roots_are_exact() {
    let ctx = DftContext::<f64>::new(4).unwrap();
    assert_eq!(ctx.omega_pow(0), Complex64::new(1.0, 0.0));
    assert_eq!(ctx.omega_pow(1), Complex64::new(0.0, 1.0));
    assert_eq!(ctx.omega_pow(2), Complex64::new(-1.0, 0.0));
    assert_eq!(ctx.omega_pow(3), Complex64::new(0.0, -1.0));
    assert_eq!(ctx.omega_pow(-1), Complex64::new(0.0, -1.0));
    let ctx6 = DftContext::<f64>::new(6).unwrap();
    assert_eq!(ctx6.omega_pow(3), Complex64::new(-1.0, 0.0));
    // omega_3 = omega_6^2 through the divisor-order accessor.
    assert_eq!(ctx6.root_pow(3, 1), ctx6.omega_pow(2));
    assert_eq!(ctx6.root_pow(2, 1), Complex64::new(-1.0, 0.0));
}

#[test]
fn both_routes_agree_and_marginals_hold() {
    let mut rng = StdRng::seed_from_u64(11);
    for d in 1..=10usize {
        let ctx = DftContext::<f64>::new(d).unwrap();
        let f = random_hermitian::<f64>(d, &mut rng);
        let q = kd_distribution(f.matrix(), &ctx).unwrap();
        let q2 = kd_distribution_direct(f.matrix(), &ctx).unwrap();
        assert!(
            q.matrix().max_abs_diff(q2.matrix()) < 1e-13,
            "route agreement, d={d}"
        );
        // Row marginals give the a-basis diagonal of F.
        for j in 1..=d {
            let m = q.row_marginals()[j - 1];
            assert!((m - f.matrix()[(j - 1, j - 1)]).norm() < 1e-12, "row {j}, d={d}");
        }
        // Column marginals give the b-basis diagonal, U^H F U.
        let u = ctx.matrix();
        let fb = u.adjoint().mul(f.matrix()).mul(u);
        for k in 1..=d {
            let m = q.col_marginals()[k - 1];
            assert!((m - fb[(k - 1, k - 1)]).norm() < 1e-12, "col {k}, d={d}");
        }
        assert!((q.total() - f.trace()).norm() < 1e-12, "total, d={d}");
    }
}

#[test]
fn classify_positive_on_basis_state() {
    // |a_1><a_1| has Q[j][k] = delta_{j1} / d: nonnegative everywhere.
    let ctx = DftContext::<f64>::new(5).unwrap();
    let mut f = CMatrix::<f64>::zeros(5);
    f[(0, 0)] = Complex64::new(1.0, 0.0);
    let q = kd_distribution(&f, &ctx).unwrap();
    let c = classify(&q, &ToleranceConfig::default());
    assert_eq!(c.class, KdClass::Positive);
    assert!(c.witness.is_none());
    assert_abs_diff_eq!(q.value(1, 1).re, 0.2, epsilon = 1e-14);
}

#[test]
fn classify_real_not_positive_with_witness() {
    // A traceless member of the KD-real subspace has a real distribution
    // that must dip negative somewhere.
    let basis = kdreal::hermitian_basis::<f64>(3).unwrap();
    let el = basis
        .iter()
        .find(|e| matches!(e.kind, kdreal::BasisKind::Symmetric { .. }))
        .unwrap();
    let ctx = DftContext::<f64>::new(3).unwrap();
    let q = kd_distribution(&el.matrix, &ctx).unwrap();
    let c = classify(&q, &ToleranceConfig::default());
    assert_eq!(c.class, KdClass::RealNotPositive);
    let w = c.witness.unwrap();
    assert!(w.value.re < 0.0);
    assert!((1..=3).contains(&w.row) && (1..=3).contains(&w.col));
    assert_eq!(q.value(w.row, w.col), w.value);
}

#[test]
fn classify_complex_with_witness() {
    let ctx = DftContext::<f64>::new(4).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    let f = random_hermitian::<f64>(4, &mut rng);
    let q = kd_distribution(f.matrix(), &ctx).unwrap();
    let c = classify(&q, &ToleranceConfig::default());
    assert_eq!(c.class, KdClass::Complex);
    let w = c.witness.unwrap();
    assert!(w.value.im.abs() > 1e-10);
}

#[test]
fn density_checks() {
    let tol = ToleranceConfig::<f64>::default();
    let mut rng = StdRng::seed_from_u64(5);
    for d in 1..=8usize {
        let rho = random_density::<f64>(d, &mut rng);
        assert!(is_density(rho.matrix(), &tol), "d={d}");
        assert!(
            !is_density(&rho.matrix().scaled(Complex64::new(2.0, 0.0)), &tol),
            "trace 2 accepted, d={d}"
        );
    }
    // Hermitian, unit trace, but indefinite.
    let mut f = CMatrix::<f64>::zeros(2);
    f[(0, 0)] = Complex64::new(2.0, 0.0);
    f[(1, 1)] = Complex64::new(-1.0, 0.0);
    assert!(!is_density(&f, &tol));
    // Not Hermitian at all.
    let mut g = CMatrix::<f64>::zeros(2);
    g[(0, 0)] = Complex64::new(1.0, 0.0);
    g[(0, 1)] = Complex64::new(0.3, 0.0);
    assert!(!is_density(&g, &tol));
}

#[test]
fn dimension_mismatch_is_reported() {
    let ctx = DftContext::<f64>::new(3).unwrap();
    let f = CMatrix::<f64>::identity(4);
    assert!(matches!(
        kd_distribution(&f, &ctx),
        Err(Error::DimMismatch(4, 3))
    ));
}

#[test]
fn tolerance_validation() {
    assert!(ToleranceConfig::new(1e-10, 1e-9, 1e-12).is_ok());
    assert!(matches!(
        ToleranceConfig::new(0.0, 1e-9, 1e-12),
        Err(Error::InvalidTolerance)
    ));
    assert!(matches!(
        ToleranceConfig::new(1e-10, -1.0, 1e-12),
        Err(Error::InvalidTolerance)
    ));
}
