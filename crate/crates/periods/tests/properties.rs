use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar, Real};
use hypergeom::{ifun_coefficients, jk_hypersurface};
use periods::*;
use proptest::prelude::*;

fn real(x: f64) -> Real {
    Real::from_f64(x, 256)
}

fn tol(e: i64) -> Real {
    Real::from_scalar(&ExactScalar::from_int(10).pow(-e).unwrap(), 256)
}

fn rotated(r: f64, frac_pi: i64) -> BigComplex {
    let theta = &Real::pi(256) / &Real::from_i64(frac_pi, 256);
    BigComplex::from_polar(&real(r), &theta)
}

#[test]
fn agreement_at_small_alpha() {
    let opts = QuadratureOptions::new(256, tol(32));
    for (k, alpha) in [
        (1, BigComplex::from_f64(1e-9, 0.0, 256)),
        (1, rotated(1e-9, 5)),
        (2, BigComplex::from_f64(1e-15, 0.0, 256)),
    ] {
        let r = main_theorem_check(k, &alpha, &opts).unwrap();
        assert!(r.pass, "k={k}");
        assert!(r.agreement < tol(30), "k={k}: {}", r.agreement.to_sci(5));
        assert!(r.quadrature.error_estimate < tol(32));
        assert!(r.quadrature.disk_margin > Real::zero(256));
    }
}

#[test]
fn flipped_branch_is_rejected() {
    let opts = QuadratureOptions {
        branch: Branch::Flipped,
        ..Default::default()
    };
    let r = main_theorem_check(1, &rotated(1e-9, 5), &opts).unwrap();
    assert!(!r.pass);
}

#[test]
fn doubling_converges_geometrically() {
    let q = period_quadrature(1, &BigComplex::from_f64(1e-9, 0.0, 256), &QuadratureOptions::default()).unwrap();
    let floor = Real::pow2(-128, 256);
    for w in q.history.windows(2) {
        let ((n, e1), (_, e2)) = (&w[0], &w[1]);
        if *n >= 128 && e1 > &floor && e2 > &floor {
            assert!(e2 < &e1.powf(&real(1.5)), "N={n}: {} -> {}", e1.to_sci(4), e2.to_sci(4));
        }
    }
}

#[test]
fn homotopy_invariance_in_the_band() {
    let alpha = BigComplex::from_f64(1e-9, 0.0, 256);
    let mut values = Vec::new();
    // band for k = 1 is (1/3, 2/5); at α = 10⁻⁹ the radicand disks hold for e in about (0.354, 0.39)
    for e in [
        ExactScalar::new(9, 25),
        ExactScalar::new(11, 30),
        ExactScalar::new(3, 8),
    ] {
        let opts = QuadratureOptions {
            exponent: Some(e),
            ..Default::default()
        };
        values.push(period_quadrature(1, &alpha, &opts).unwrap().value);
    }
    for v in &values[1..] {
        assert!((v - &values[0]).abs() < tol(30));
    }
}

#[test]
fn real_alpha_gives_real_period() {
    for k in [1, 2] {
        let a = alpha_limit(k, 256).unwrap();
        let alpha = BigComplex::from_real(&a * &real(1e-4));
        let q = period_quadrature(k, &alpha, &QuadratureOptions::default()).unwrap();
        assert!(q.value.im.abs() < tol(30));
    }
}

#[test]
fn series_matches_expansion() {
    for k in 1..=3 {
        let alpha = BigComplex::from_real(&alpha_limit(k, 256).unwrap() * &real(0.3));
        let coeffs = ifun_coefficients(&jk_hypersurface(k).unwrap(), 30);
        for jmax in [0u64, 5, 30] {
            let exp = expansion_value(k, &alpha, jmax).unwrap();
            let mut direct = BigComplex::zero(256);
            let mut power = BigComplex::one(256);
            for c in &coeffs[..=jmax as usize] {
                direct = &direct + &power.scale(&Real::from_scalar(c, 256));
                power = &power * &alpha;
            }
            assert!(
                (&exp - &direct).abs() < Real::pow2(-240, 256) * direct.abs(),
                "k={k} jmax={jmax}"
            );
        }
        let (s, n) = series_value(k, &alpha, &tol(30)).unwrap();
        let e = expansion_value(k, &alpha, n as u64 - 1).unwrap();
        assert!((&s - &e).abs() < Real::pow2(-240, 256));
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let alpha = rotated(1e-9, 5);
    let a = QuadratureOptions {
        exec: Exec::Sequential,
        ..Default::default()
    };
    let b = QuadratureOptions {
        exec: Exec::Parallel,
        ..Default::default()
    };
    let (qa, qb) = (
        period_quadrature(1, &alpha, &a).unwrap(),
        period_quadrature(1, &alpha, &b).unwrap(),
    );
    assert_eq!(qa.value.to_f64_pair(), qb.value.to_f64_pair());
    assert!((&qa.value - &qb.value).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radius_lies_in_band(k in 1i64..6, log10 in -20.0f64..-0.5) {
        let r = Real::from_f64(10f64.powf(log10), 128);
        let rho = contour_radius(k, &r).unwrap();
        let lo = r.powf(&Real::from_scalar(&ExactScalar::new(2, 4 * k + 1), 128));
        let hi = r.powf(&Real::from_scalar(&ExactScalar::new(1, 2 * k + 1), 128));
        prop_assert!(lo < rho && rho < hi);
    }
}
