use proptest::prelude::*;

use consideration::sampling;
use consideration::*;

fn universe(n: usize) -> Universe {
    Universe::numbered(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn filters_are_contractive(n in 1usize..7, seed: u64) {
        let u = universe(n);
        let mut rng = sampling::rng(seed);
        for f in [sampling::random_rule_filter(&u, &mut rng), sampling::random_table_filter(&u, &mut rng)] {
            for m in u.menus() {
                prop_assert!(f.apply(m).is_subset_of(m));
            }
        }
    }

    #[test]
    fn io_is_closed_under_composition(n in 1usize..7, seed: u64) {
        let u = universe(n);
        let mut rng = sampling::rng(seed);
        let a = sampling::random_io_filter(&u, &mut rng);
        let b = sampling::random_io_filter(&u, &mut rng);
        let ab = compose2(&a, &b).unwrap();
        let r = check_io(&ab);
        prop_assert!(r.holds);
        prop_assert_eq!(r.considered, Some(a.on_full().intersection(b.on_full())));
        prop_assert!(ab.same_table(&compose2(&b, &a).unwrap()));
    }

    #[test]
    fn identity_is_a_unit_and_empty_absorbs(n in 1usize..6, seed: u64) {
        let u = universe(n);
        let f = sampling::random_table_filter(&u, &mut sampling::rng(seed));
        let id = Filter::identity(&u);
        let empty = Filter::empty(&u);
        prop_assert!(compose2(&id, &f).unwrap().same_table(&f));
        prop_assert!(compose2(&f, &id).unwrap().same_table(&f));
        prop_assert!(compose2(&empty, &f).unwrap().same_table(&empty));
        prop_assert!(compose2(&f, &empty).unwrap().same_table(&empty));
    }

    #[test]
    fn io_filters_pass_alpha_and_tau(n in 1usize..7, seed: u64) {
        let u = universe(n);
        let f = sampling::random_io_filter(&u, &mut sampling::rng(seed));
        prop_assert!(check_sens_alpha(&f).holds);
        prop_assert!(check_condition_tau(&f).holds);
    }

    #[test]
    fn threshold_roundtrip(n in 1usize..9, seed: u64) {
        let u = universe(n);
        let f = sampling::random_io_filter(&u, &mut sampling::rng(seed));
        let rep = construct_threshold_representation(&f).unwrap();
        prop_assert!(induced_filter(&rep, &u).unwrap().same_table(&f));
    }

    #[test]
    fn non_io_filters_have_no_threshold_representation(seed: u64) {
        let u = universe(3);
        let f = sampling::random_table_filter(&u, &mut sampling::rng(seed));
        match construct_threshold_representation(&f) {
            Ok(rep) => prop_assert!(check_io(&f).holds && induced_filter(&rep, &u).unwrap() == f),
            Err(Error::RepresentationImpossible(r)) => prop_assert!(r.replay(&f)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn choice_is_invariant_under_positive_affine_maps(
        values in prop::collection::vec(0i32..10, 1..7),
        scale_exp in 0u32..6,
        shift in -20i32..20,
        seed: u64,
    ) {
        let u = universe(values.len());
        let rep = construct_threshold_representation(&sampling::random_io_filter(&u, &mut sampling::rng(seed))).unwrap();
        let base = AggregateUtility::new(&u, values.iter().map(|&v| f64::from(v)).collect()).unwrap();
        let scale = f64::from(1u32 << scale_exp);
        let moved = AggregateUtility::new(&u, values.iter().map(|&v| scale * f64::from(v) + f64::from(shift)).collect()).unwrap();
        for m in u.menus() {
            prop_assert_eq!(threshold_choice(&rep, &base, m), threshold_choice(&rep, &moved, m));
        }
    }

    #[test]
    fn threshold_choice_data_satisfies_warp_io(n in 1usize..7, seed: u64, coverage in 0.2f64..=1.0) {
        let u = universe(n);
        let ds = sampling::random_io_dataset(&u, &mut sampling::rng(seed), coverage);
        let r = check_warp_io(&ds);
        prop_assert!(r.satisfied, "{:?}", r.violations);
    }

    #[test]
    fn rational_data_satisfies_every_audit(n in 1usize..7, seed: u64) {
        let u = universe(n);
        let ds = sampling::random_rational_dataset(&u, &mut sampling::rng(seed));
        prop_assert!(check_warp(&ds).satisfied);
        prop_assert!(check_warp_co(&ds).satisfied);
        prop_assert!(check_warp_io(&ds).violations.is_empty());
    }

    #[test]
    fn witnesses_replay(n in 2usize..6, seed: u64) {
        let u = universe(n);
        let mut rng = sampling::rng(seed);
        let f = sampling::random_table_filter(&u, &mut rng);
        for r in [check_sens_alpha(&f), check_condition_tau(&f), check_io(&f)] {
            prop_assert_eq!(r.holds, r.witness.is_none());
            if !r.holds {
                prop_assert!(r.replay(&f));
            }
        }
        let g = sampling::random_table_filter(&u, &mut rng);
        if let Some(w) = check_commutative2(&f, &g).unwrap().witness {
            prop_assert!(w.replay(&[f, g]));
        }
    }

    #[test]
    fn composition_is_associative(n in 1usize..5, seed: u64) {
        let u = universe(n);
        let mut rng = sampling::rng(seed);
        let fs: Vec<Filter> = (0..3).map(|_| sampling::random_table_filter(&u, &mut rng)).collect();
        let left = compose2(&compose2(&fs[0], &fs[1]).unwrap(), &fs[2]).unwrap();
        let right = compose2(&fs[0], &compose2(&fs[1], &fs[2]).unwrap()).unwrap();
        prop_assert!(left.same_table(&right));
        prop_assert!(left.same_table(&compose_n(&FilterSequence::new(fs).unwrap())));
    }
}
