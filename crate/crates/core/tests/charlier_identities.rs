use proptest::prelude::*;

use multi_appell::charlier::{
    addition_formula, addition_formula_on_grid, charlier_explicit, charlier_genfunc,
    connection_formula, diff_relations_check, inversion_formula, recurrence_residuals,
    verify_difference_rule, CharlierParams,
};
use multi_appell::rational::{binomial, from_bigint, int, pow, ratio, Rational};
use multi_appell::{FFPoly, MultiIndex, Step};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn params(arity: usize) -> impl Strategy<Value = CharlierParams> {
    prop::collection::vec(rational(), arity).prop_map(|v| CharlierParams::new(v).unwrap())
}

fn index(arity: usize, max: usize) -> impl Strategy<Value = MultiIndex> {
    prop::sample::select(MultiIndex::simplex(arity, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn explicit_matches_generating_function(
        (a, n) in (1usize..=3).prop_flat_map(|r| (params(r), index(r, 5)))
    ) {
        prop_assert_eq!(
            charlier_explicit(&n, &a).unwrap(),
            charlier_genfunc(&n, &a, n.total()).unwrap()
        );
    }

    #[test]
    fn monic_of_total_degree((a, n) in (1usize..=3).prop_flat_map(|r| (params(r), index(r, 6)))) {
        let c = charlier_explicit(&n, &a).unwrap();
        prop_assert_eq!(c.degree(), Some(n.total()));
        prop_assert_eq!(c.leading_coeff(), Some(&int(1)));
    }

    #[test]
    fn exchanging_weights_and_indices(a in params(2), n in index(2, 6)) {
        let swapped = CharlierParams::new(vec![a.get(1).clone(), a.get(0).clone()]).unwrap();
        let m = MultiIndex::from([n.get(1), n.get(0)]);
        prop_assert_eq!(charlier_explicit(&n, &a).unwrap(), charlier_explicit(&m, &swapped).unwrap());
    }

    #[test]
    fn difference_rule_holds(a in params(2), n in index(2, 6)) {
        prop_assert!(verify_difference_rule(&n, &a).unwrap().holds());
    }

    #[test]
    fn inversion_and_connection((a, b, n) in (2usize..=3).prop_flat_map(|r| (params(r), params(r), index(r, 4)))) {
        prop_assert!(inversion_formula(&n, &a).unwrap().holds());
        prop_assert!(connection_formula(&n, &a, &b).unwrap().holds());
    }

    #[test]
    fn addition_symbolic_and_grid_agree(a in params(2), alpha in params(2), n in index(2, 4)) {
        let symbolic = addition_formula(&n, &a, &alpha).unwrap();
        let grid = addition_formula_on_grid(&n, &a, &alpha).unwrap();
        prop_assert!(symbolic.holds());
        prop_assert!(grid.is_empty());
    }

    #[test]
    fn first_and_third_recurrences(a in params(2), n in index(2, 6)) {
        let r = recurrence_residuals(&n, &a).unwrap();
        prop_assert!(r.rec1.is_zero());
        prop_assert!(r.rec3.is_zero());
    }

    #[test]
    fn second_recurrence_off_the_boundary(a in params(2), n1 in 0usize..5, n2 in 1usize..5) {
        let r = recurrence_residuals(&MultiIndex::from([n1, n2]), &a).unwrap();
        prop_assert!(r.rec2.is_zero());
    }
}

#[test]
fn second_recurrence_boundary_residual_is_the_dropped_term() {
    // At n2 = 0 the C_{n1,n2-1} and C_{n1-1,n2-1} terms vanish by convention,
    // leaving a1 n1 C_{n1-1,0} unaccounted for.
    for a in [
        CharlierParams::new(vec![int(1), int(2)]).unwrap(),
        CharlierParams::new(vec![ratio(-3, 2), ratio(5, 7)]).unwrap(),
    ] {
        assert!(recurrence_residuals(&MultiIndex::from([0, 0]), &a)
            .unwrap()
            .rec2
            .is_zero());
        for n1 in 1..=6usize {
            let r = recurrence_residuals(&MultiIndex::from([n1, 0]), &a).unwrap();
            let dropped = charlier_explicit(&MultiIndex::from([n1 - 1, 0]), &a)
                .unwrap()
                .scale(&(a.get(0) * int(n1 as i64)));
            assert_eq!(r.rec2, dropped, "n1 = {n1}");
        }
    }
}

#[test]
fn differential_relations_for_one_to_three_weights() {
    for a in [
        CharlierParams::new(vec![ratio(3, 4)]).unwrap(),
        CharlierParams::new(vec![int(1), int(-2)]).unwrap(),
        CharlierParams::new(vec![int(1), int(2), ratio(1, 3)]).unwrap(),
    ] {
        assert!(diff_relations_check(&a, 6).unwrap().holds(), "a = {a}");
    }
}

#[test]
fn single_weight_is_a_classical_appell_set() {
    // C_n^(a) = sum_k C(n,k) (-a)^{n-k} x^(k): the single-index construction
    // with seed a_k = (-a)^k
    let s = Step::one();
    let a = ratio(5, 3);
    let params = CharlierParams::new(vec![a.clone()]).unwrap();
    for n in 0..=8usize {
        let mut expected = FFPoly::zero(&s);
        for k in 0..=n {
            let c = from_bigint(binomial(n, k)) * pow(&-&a, n - k);
            expected = expected.add(&FFPoly::basis(k, &s).scale(&c)).unwrap();
        }
        let c = charlier_explicit(&MultiIndex::from([n]), &params).unwrap();
        assert_eq!(c, expected);
        if n > 0 {
            let lower = charlier_explicit(&MultiIndex::from([n - 1]), &params).unwrap();
            assert_eq!(c.delta(), lower.scale(&int(n as i64)));
        }
    }
}

#[test]
fn known_small_polynomials_in_monomial_form() {
    let a = CharlierParams::new(vec![int(1), int(2)]).unwrap();
    let c = |n: [usize; 2]| charlier_explicit(&MultiIndex::from(n), &a).unwrap();
    assert_eq!(c([1, 0]).to_monomial_string(), "x - 1");
    // x(x-1) - 3x + 2
    assert_eq!(c([1, 1]).to_monomial_string(), "x^2 - 4*x + 2");
    // x(x-1) - 2x + 1
    assert_eq!(c([2, 0]).to_monomial_string(), "x^2 - 3*x + 1");
}
