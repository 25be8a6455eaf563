mod common;

use eqalg::fgab::{Element, FgAbGroup};
use eqalg::mackey::{
    box_product, box_swap, burnside_hermitian, burnside_mackey, burnside_unit_map,
    hermitian_from_ring, random_mackey, validate_hermitian, validate_mackey, HermitianMackey,
};
use eqalg::matrix::Int;
use eqalg::ringalg::{gaussian_integers, integers, matrix_ring_m2, zmod};
use eqalg::thr::thr_pi0;
use proptest::prelude::*;

fn pick(g: &FgAbGroup, coords: &[i64]) -> Element {
    g.element((0..g.ngens()).map(|i| Int::from(coords[i % coords.len()])).collect())
}

fn hermitians() -> Vec<HermitianMackey> {
    vec![
        hermitian_from_ring(&integers()).unwrap(),
        hermitian_from_ring(&zmod(4)).unwrap(),
        hermitian_from_ring(&gaussian_integers()).unwrap(),
        hermitian_from_ring(&matrix_ring_m2()).unwrap(),
        burnside_hermitian(),
    ]
}

#[test]
fn builtin_hermitians_validate() {
    for h in hermitians() {
        assert!(validate_hermitian(&h).is_valid());
    }
}

#[test]
fn seeded_random_mackey_box_units() {
    let mut rng = common::rng();
    let a = burnside_mackey();
    for _ in 0..6 {
        let m = random_mackey(&mut rng, 12);
        assert!(validate_mackey(&m).is_valid());
        let am = box_product(&a, &m).unwrap();
        assert!(burnside_unit_map(&am).unwrap().is_isomorphism());
        let ma = box_product(&m, &a).unwrap();
        assert!(box_swap(&ma, &am).unwrap().is_isomorphism());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_extension_rule(
        which in 0usize..5,
        a in prop::collection::vec(-4i64..=4, 1..5),
        b in prop::collection::vec(-4i64..=4, 1..5),
        x in prop::collection::vec(-4i64..=4, 1..4),
        y in prop::collection::vec(-4i64..=4, 1..4),
    ) {
        let h = &hermitians()[which];
        let (e, fix, r) = (&h.mackey.level_e, &h.mackey.level_fix, &h.ring_e);
        let (a, b) = (pick(e, &a), pick(e, &b));
        let (x, y) = (pick(fix, &x), pick(fix, &y));
        let lhs = h.act(&r.add(&a, &b), &x);
        let rhs = fix.add(&fix.add(&h.act(&a, &x), &h.act(&b, &x)), &h.cross_term(&a, &x, &b));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(h.act(&a, &fix.add(&x, &y)), fix.add(&h.act(&a, &x), &h.act(&a, &y)));
        let res = &h.mackey.res;
        prop_assert_eq!(res.apply(&h.act(&a, &x)), r.mul3(&a, &res.apply(&x), &h.mackey.w.apply(&a)));
        prop_assert_eq!(h.act(&r.mul(&a, &b), &x), h.act(&a, &h.act(&b, &x)));
    }

    #[test]
    fn transfer_relation_additive(
        which in 0usize..5,
        a in prop::collection::vec(-4i64..=4, 1..5),
        b in prop::collection::vec(-4i64..=4, 1..5),
        c in prop::collection::vec(-4i64..=4, 1..5),
    ) {
        let h = &hermitians()[which];
        let (e, fix, r) = (&h.mackey.level_e, &h.mackey.level_fix, &h.ring_e);
        let (a, b, c) = (pick(e, &a), pick(e, &b), pick(e, &c));
        let tran = &h.mackey.tran;
        let w = &h.mackey.w;
        prop_assert_eq!(tran.apply(&r.mul3(&a, &b, &w.apply(&a))), h.act(&a, &tran.apply(&b)));
        let bc = e.add(&b, &c);
        prop_assert_eq!(
            h.act(&a, &tran.apply(&bc)),
            fix.add(&h.act(&a, &tran.apply(&b)), &h.act(&a, &tran.apply(&c)))
        );
    }

    #[test]
    fn pair_relation_for_arbitrary_scalars(
        which in 0usize..5,
        a in prop::collection::vec(-3i64..=3, 1..5),
        x in prop::collection::vec(-3i64..=3, 1..4),
        y in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let h = &hermitians()[which];
        let rep = thr_pi0(&h).unwrap();
        prop_assert_eq!(rep.box_agrees, Some(true));
        let (e, fix) = (&h.mackey.level_e, &h.mackey.level_fix);
        let a = pick(e, &a);
        let (x, y) = (pick(fix, &x), pick(fix, &y));
        let wa = h.mackey.w.apply(&a);
        prop_assert_eq!(rep.pair(&x, &h.act(&a, &y)), rep.pair(&h.act(&wa, &x), &y));
    }
}
