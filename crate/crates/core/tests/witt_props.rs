use eqalg::fgab::{Element, FgAbGroup};
use eqalg::matrix::Int;
use eqalg::ringalg::{gaussian_integers, integers, matrix_ring_m2, zmod, PresRing};
use eqalg::witt::{WittPair, WittRing};
use proptest::prelude::*;

fn pick(g: &FgAbGroup, coords: &[i64]) -> Element {
    g.element((0..g.ngens()).map(|i| Int::from(coords[i % coords.len()])).collect())
}

fn commutative_bases() -> Vec<PresRing> {
    vec![integers(), zmod(4), zmod(3), zmod(6), gaussian_integers()]
}

fn random_pair(w: &WittRing, a: &[i64], c: &[i64]) -> WittPair {
    w.pair(pick(w.base().carrier(), a), pick(w.coinvariants(), c))
}

type Coords = Vec<i64>;

fn coords() -> impl Strategy<Value = Coords> {
    prop::collection::vec(-5i64..=5, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witt_ring_axioms(which in 0usize..5, xs in (coords(), coords()), ys in (coords(), coords()), zs in (coords(), coords())) {
        let w = WittRing::new(&commutative_bases()[which]).unwrap();
        let x = random_pair(&w, &xs.0, &xs.1);
        let y = random_pair(&w, &ys.0, &ys.1);
        let z = random_pair(&w, &zs.0, &zs.1);
        let eq = |p: &WittPair, q: &WittPair| w.to_coords(p) == w.to_coords(q);
        prop_assert!(eq(&w.add(&w.add(&x, &y), &z), &w.add(&x, &w.add(&y, &z))));
        prop_assert!(eq(&w.add(&x, &y), &w.add(&y, &x)));
        prop_assert!(eq(&w.add(&x, &w.neg(&x)), &w.zero()));
        prop_assert!(eq(&w.mul(&w.mul(&x, &y), &z), &w.mul(&x, &w.mul(&y, &z))));
        prop_assert!(eq(&w.mul(&x, &y), &w.mul(&y, &x)));
        prop_assert!(eq(&w.mul(&x, &w.add(&y, &z)), &w.add(&w.mul(&x, &y), &w.mul(&x, &z))));
        prop_assert!(eq(&w.mul(&w.one(), &x), &x));
    }

    #[test]
    fn ghost_maps_are_ring_maps(which in 0usize..5, xs in (coords(), coords()), ys in (coords(), coords())) {
        let w = WittRing::new(&commutative_bases()[which]).unwrap();
        let x = random_pair(&w, &xs.0, &xs.1);
        let y = random_pair(&w, &ys.0, &ys.1);
        let s = w.base();
        let sq = &w.square().ring;
        prop_assert_eq!(w.ghost0(&w.add(&x, &y)), s.add(&w.ghost0(&x), &w.ghost0(&y)));
        prop_assert_eq!(w.ghost0(&w.mul(&x, &y)), s.mul(&w.ghost0(&x), &w.ghost0(&y)));
        prop_assert_eq!(w.ghost1(&w.add(&x, &y)), sq.add(&w.ghost1(&x), &w.ghost1(&y)));
        prop_assert_eq!(w.ghost1(&w.mul(&x, &y)), sq.mul(&w.ghost1(&x), &w.ghost1(&y)));
        prop_assert_eq!(w.ghost1(&w.one()), sq.one());
    }

    #[test]
    fn coordinates_are_additive_and_invertible(noncomm in any::<bool>(), which in 0usize..5, xs in (coords(), coords()), ys in (coords(), coords()), n in -6i64..=6) {
        let base = if noncomm { matrix_ring_m2() } else { commutative_bases()[which].clone() };
        let w = WittRing::new(&base).unwrap();
        let g = w.group();
        let x = random_pair(&w, &xs.0, &xs.1);
        let y = random_pair(&w, &ys.0, &ys.1);
        prop_assert_eq!(w.to_coords(&w.add(&x, &y)), g.add(&w.to_coords(&x), &w.to_coords(&y)));
        prop_assert_eq!(w.to_coords(&w.scale(&Int::from(n), &x)), g.scale(&Int::from(n), &w.to_coords(&x)));
        prop_assert_eq!(w.to_coords(&w.from_coords(&w.to_coords(&x))), w.to_coords(&x));
    }
}

#[test]
fn ghost_maps_jointly_injective() {
    for base in [integers(), zmod(3), zmod(5)] {
        let w = WittRing::new(&base).unwrap();
        let (s, c) = (w.base().carrier(), w.coinvariants());
        let sq = w.square().tensor.group.clone();
        let mut seen = 0;
        for a in -15i64..=15 {
            for k in -15i64..=15 {
                let x = w.pair(pick(s, &[a]), pick(c, &[k]));
                if w.ghost0(&x) == s.zero() && w.ghost1(&x) == sq.zero() {
                    assert_eq!(w.to_coords(&x), w.to_coords(&w.zero()), "a={a} c={k}");
                }
                seen += 1;
            }
        }
        assert!(seen >= 961);
    }
}
