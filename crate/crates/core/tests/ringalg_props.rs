use eqalg::fgab::{Element, FgAbGroup};
use eqalg::matrix::Int;
use eqalg::ringalg::{
    group_by_name, integers, matrix_ring_m2, monoid_ring, validate_ring, zmod, FinMonoid, PresRing,
};
use proptest::prelude::*;

fn pick(g: &FgAbGroup, coords: &[i64]) -> Element {
    g.element((0..g.ngens()).map(|i| Int::from(coords[i % coords.len()])).collect())
}

fn product_rings() -> Vec<PresRing> {
    let c2 = FinMonoid::cyclic(2);
    let c3 = FinMonoid::cyclic(3);
    let s3 = group_by_name("s3").unwrap();
    vec![
        monoid_ring(&integers(), &c2.product(&c3)).unwrap(),
        monoid_ring(&zmod(4), &c2.product(&c2)).unwrap(),
        monoid_ring(&integers(), &s3.product(&c2)).unwrap(),
        monoid_ring(&matrix_ring_m2(), &c2).unwrap(),
    ]
}

#[test]
fn product_monoid_rings_are_valid() {
    for r in product_rings() {
        let rep = validate_ring(&r);
        assert!(rep.is_valid(), "{:?}", rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monoid_ring_associative_and_anti_involutive(
        which in 0usize..4,
        a in prop::collection::vec(-3i64..=3, 1..16),
        b in prop::collection::vec(-3i64..=3, 1..16),
        c in prop::collection::vec(-3i64..=3, 1..16),
    ) {
        let r = &product_rings()[which];
        let (a, b, c) = (pick(r.carrier(), &a), pick(r.carrier(), &b), pick(r.carrier(), &c));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.apply_w(&r.mul(&a, &b)), r.mul(&r.apply_w(&b), &r.apply_w(&a)));
        prop_assert_eq!(r.mul(&r.one(), &a), a.clone());
    }
}
