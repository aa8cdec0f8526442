use exactcore::par::Exec;
use exactcore::ExactScalar;
use hypergeom::*;
use proptest::prelude::*;

#[test]
fn jk_operator_order_is_6k_plus_2() {
    for k in 1..=10 {
        let op = build_operator(&jk_hypersurface(k).unwrap());
        assert_eq!(op.order as i64, 6 * k + 2, "k = {k}");
    }
}

#[test]
fn jk_coefficients_are_integers() {
    for k in 1..=3 {
        let h = jk_hypersurface(k).unwrap();
        for (j, c) in ifun_coefficients(&h, 100).iter().enumerate() {
            assert!(c.is_integer(), "k = {k}, j = {j}");
        }
    }
}

#[test]
fn coefficient_identity_grid() {
    let rows = coefficient_identity_batch(Exec::default(), 6, 40).unwrap();
    assert_eq!(rows.len(), 6 * 41);
    for (k, j, ok) in rows {
        assert!(ok, "k = {k}, j = {j}");
    }
}

#[test]
fn batch_modes_agree() {
    let a = coefficient_identity_batch(Exec::Sequential, 2, 6).unwrap();
    let b = coefficient_identity_batch(Exec::Parallel, 2, 6).unwrap();
    assert_eq!(a, b);
}

#[test]
fn singular_value_closed_forms_agree() {
    for k in 1..=10 {
        let h = jk_hypersurface(k).unwrap();
        assert_eq!(singular_value(&h), jk_singular_value_closed_form(k).unwrap(), "k = {k}");
        assert!(m_alpha_product(k).unwrap().is_one());
    }
}

#[test]
fn bcm_data_is_balanced() {
    for k in 1..=6 {
        let d = bcm_data(k).unwrap();
        let order = build_operator(&jk_hypersurface(k).unwrap()).order;
        assert_eq!(d.p.iter().sum::<u64>(), d.q.iter().sum::<u64>());
        assert_eq!(d.v.len(), order);
        assert_eq!(d.w.len(), order);
        assert!(multiset_identity_check(k).unwrap());
    }
}

#[test]
fn recurrence_for_several_weight_systems() {
    let systems = [
        jk_hypersurface(1).unwrap(),
        jk_hypersurface(2).unwrap(),
        jk_hypersurface(3).unwrap(),
        WeightedHypersurface::new(vec![1, 1, 1, 1, 1], 5).unwrap(),
        WeightedHypersurface::new(vec![1, 1, 1, 2], 4).unwrap(),
    ];
    for h in &systems {
        assert!(recurrence_check(h, 60).unwrap().holds, "{h:?}");
    }
}

#[test]
fn series_ratio_tends_to_inverse_singular_value() {
    let h = jk_hypersurface(1).unwrap();
    let cs = ifun_coefficients(&h, 400);
    let ratio = (&cs[400] / &cs[399]) * singular_value(&h);
    assert!((ratio - ExactScalar::one()).abs() < ExactScalar::new(1, 100));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn reduction_balances_both_sides(weights in proptest::collection::vec(1u64..8, 2..6)) {
        let d = weights.iter().sum::<u64>() - 1;
        let h = WeightedHypersurface::new(weights, d).unwrap();
        prop_assert!(h.is_anticanonical());
        let op = build_operator(&h);
        prop_assert_eq!(op.reduced_p0.total(), op.reduced_p1.total());
        prop_assert!(op.reduced_p0.is_nonnegative() && op.reduced_p1.is_nonnegative());
        prop_assert!(op.reduced_p0.intersection(&op.reduced_p1).is_empty());
    }
}
