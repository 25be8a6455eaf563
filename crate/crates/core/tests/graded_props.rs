use eqalg::fgab::FgAbGroup;
use eqalg::graded::{
    graded_tor, graded_tor_with, thr_fp_odd, weight_slice, GradedAbGroup, GradedResolution,
};
use eqalg::matrix::Int;
use num_integer::Integer;
use proptest::prelude::*;

fn graded(layout: &[Vec<i64>]) -> GradedAbGroup {
    GradedAbGroup::new(
        layout.iter()
            .map(|inv| {
                let free = inv.iter().filter(|&&d| d == 0).count();
                let tors: Vec<Int> = inv.iter().filter(|&&d| d > 1).map(|&d| Int::from(d)).collect();
                FgAbGroup::from_invariants(free, &tors)
            })
            .collect(),
    )
    .unwrap()
}

fn degree_layout() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(prop_oneof![Just(0i64), 2i64..=12], 0..3), 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tor_independent_of_resolution(a in degree_layout(), b in degree_layout()) {
        let (a, b) = (graded(&a), graded(&b));
        let rep = graded_tor(&a, &b, 4).unwrap();
        prop_assert!(rep.resolutions_agree);
        let again = graded_tor_with(&GradedResolution::padded(&a), &b, 4).unwrap();
        prop_assert!(again.same_type(&rep.tor));
    }

    #[test]
    fn cyclic_tor_in_degree_zero(a in 1i64..=30, b in 1i64..=30) {
        let ga = GradedAbGroup::concentrated(FgAbGroup::cyclic(a), 0);
        let gb = GradedAbGroup::concentrated(FgAbGroup::cyclic(b), 0);
        let rep = graded_tor(&ga, &gb, 0).unwrap();
        let g = Some(Int::from(a.gcd(&b)));
        prop_assert_eq!(rep.tor.tor0.degree(0).order(), g.clone());
        prop_assert_eq!(rep.tor.tor1.degree(0).order(), g);
    }

    #[test]
    fn odd_weight_slices_are_four_periodic(p in prop::sample::select(vec![3u64, 5, 7]), k in -6i64..=6) {
        let ring = thr_fp_odd(p).unwrap();
        let dims = weight_slice(&ring, k, 16).unwrap();
        for n in 0..=12 {
            prop_assert_eq!(dims[n], dims[n + 4], "p={} k={} n={}", p, k, n);
        }
    }
}
