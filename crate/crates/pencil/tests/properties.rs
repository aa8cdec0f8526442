use exactcore::modp::{is_prime, scalar_mod};
use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar};
use pencil::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn singular(k: i64) -> ExactScalar {
    hypergeom::jk_singular_value_closed_form(k).unwrap()
}

#[test]
fn genus_is_3k_plus_1() {
    for k in 1..=20 {
        let deg = branch_polynomial_symbolic(k).unwrap().degree_in("t").unwrap() as u64;
        assert_eq!(deg, 6 * k as u64 + 4);
        assert_eq!(genus(k).unwrap(), (deg - 2) / 2);
        assert_eq!(genus(k).unwrap(), 3 * k as u64 + 1);
    }
}

#[test]
fn delta_identity_up_to_k5() {
    for k in 1..=5 {
        let r = delta_branch_identity(k).unwrap();
        assert!(r.holds, "k = {k}: {}", r.difference);
        assert!(!r.variant_holds, "k = {k}");
    }
}

#[test]
fn branch_roots_are_distinct_for_generic_alpha() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for k in [1, 2] {
        let a0 = singular(k);
        for _ in 0..20 {
            let alpha = ExactScalar::new(
                rng.gen_range(1..=10_000i64) * if rng.gen() { 1 } else { -1 },
                rng.gen_range(1..=10_000i64),
            );
            assert_ne!(alpha, a0);
            let h = branch_polynomial(k, &alpha).unwrap().univariate_coeffs("t").unwrap();
            let g = RationalUniPoly::new(h[1..].to_vec());
            assert!(squarefree_rational(&g), "k = {k}, alpha = {alpha}");
        }
    }
}

#[test]
fn repeated_roots_at_the_singular_value() {
    let h = branch_polynomial(1, &singular(1))
        .unwrap()
        .univariate_coeffs("t")
        .unwrap();
    assert!(!squarefree_rational(&RationalUniPoly::new(h[1..].to_vec())));
}

#[test]
fn weil_bound_for_random_admissible_alpha() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let a0 = singular(1);
    for q in (7..=101u64).filter(|&q| is_prime(q)) {
        let mut used = 0;
        while used < 5 {
            let alpha = ExactScalar::from_int(rng.gen_range(1..q as i64));
            if scalar_mod(&a0, q) == scalar_mod(&alpha, q) {
                continue;
            }
            let cs = charsum_y(1, &alpha, q, Exec::default()).unwrap();
            assert!(cs.weil_ok, "q = {q}, alpha = {alpha}, S = {}", cs.s);
            used += 1;
        }
    }
}

#[test]
fn character_sum_matches_brute_force() {
    for q in [3u64, 5, 7] {
        for a in 1..q as i64 {
            let alpha = ExactScalar::from_int(a);
            for k in [1, 2] {
                match charsum_y(k, &alpha, q, Exec::Sequential) {
                    Ok(cs) => assert_eq!(
                        cs.affine_count,
                        charsum_y_brute(k, &alpha, q).unwrap(),
                        "q={q} a={a} k={k}"
                    ),
                    Err(PencilError::BadReduction { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn supplementary_root_structure() {
    for (k, a) in [(1, 1e-12), (2, 1e-16)] {
        let alpha = BigComplex::from_f64(a, 0.0, 256);
        let d = branch_points(k, &alpha, 256).unwrap();
        let ku = k as usize;
        assert_eq!(d.class_sizes(), [1, 4 * ku + 1, 2 * ku + 1, 1]);
        assert!(d.roots.residual_log2() < -128);
        let outer = d.moduli(RootClass::Outer)[0].to_f64();
        assert!((outer * 64.0 - 1.0).abs() < 0.01);
        let target = (a / 4.0).powf(1.0 / (2 * k + 1) as f64);
        for m in d.moduli(RootClass::Middle) {
            let r = m.to_f64() / target;
            assert!((0.5..=2.0).contains(&r));
        }
    }
}

#[test]
fn structure_report_matches_direct_classification() {
    for (k, a) in [(1, 1e-12), (2, 1e-16)] {
        let r = root_structure_check(k, &BigComplex::from_f64(a, 0.0, 256), 256).unwrap();
        assert!(r.pass, "{r:?}");
    }
    // near the singular value for k = 1 the bands merge
    let r = root_structure_check(1, &BigComplex::from_f64(1e-6, 0.0, 256), 256).unwrap();
    assert!(!r.pass);
    assert!(r.residual_ok);
    assert_eq!(r.sizes.iter().sum::<usize>(), 10);
    assert_ne!(r.sizes, r.expected_sizes);
}

#[test]
fn middle_roots_are_exact_roots_of_the_linear_factor() {
    // 4t^{2k+1} + α = 0 has all roots of modulus |α/4|^{1/(2k+1)}
    let alpha = BigComplex::from_f64(1e-12, 0.0, 256);
    let d = branch_points(1, &alpha, 256).unwrap();
    let target = (1e-12f64 / 4.0).cbrt();
    for m in d.moduli(RootClass::Middle) {
        assert!((m.to_f64() / target - 1.0).abs() < 1e-12);
    }
}

#[test]
fn parallel_and_sequential_sums_agree() {
    let alpha = ExactScalar::new(3, 7);
    let a = charsum_y(2, &alpha, 1009, Exec::Sequential).unwrap();
    let b = charsum_y(2, &alpha, 1009, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_count_is_q_plus_s(qi in 0usize..8, a in 1i64..1000, k in 1i64..3) {
        let q = [11u64, 13, 17, 19, 23, 29, 31, 37][qi];
        if let Ok(cs) = charsum_y(k, &ExactScalar::from_int(a), q, Exec::Sequential) {
            prop_assert_eq!(cs.affine_count - q as i64, cs.s);
        }
    }
}
