use std::collections::BTreeSet;

use eqalg::fgab::{tensor, tor1, FgAbGroup, GroupHom};
use eqalg::matrix::{Int, IntMatrix};
use eqalg::snf::smith_normal_form;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// gcd of all `k × k` minors.
fn determinantal_divisor(m: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0i128;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    let rows: Vec<Vec<Int>> = (0..rows)
        .map(|i| (0..cols).map(|j| Int::from(entries[i * cols + j])).collect())
        .collect();
    IntMatrix::from_rows(cols, rows)
}

proptest! {
    #[test]
    fn snf_matches_determinantal_divisors(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-9i64..=9, 16)) {
        let m = matrix(rows, cols, &entries);
        let s = smith_normal_form(&m);
        let d = s.left.mul(&m).mul(&s.right);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j { s.diagonal[i].clone() } else { Int::zero() };
                prop_assert_eq!(&d[(i, j)], &want);
            }
        }
        prop_assert!(s.left.mul(&s.left_inv).is_identity());
        prop_assert!(s.right.mul(&s.right_inv).is_identity());
        for w in s.diagonal[..s.rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let small: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * cols + j] as i128).collect()).collect();
        let mut product = Int::from(1);
        for k in 1..=rows.min(cols) {
            product *= s.diagonal[k - 1].abs();
            prop_assert_eq!(product.clone(), Int::from(determinantal_divisor(&small, k)));
        }
    }

    #[test]
    fn order_is_kernel_times_image(
        a in prop::collection::vec(2i64..=6, 1..=3),
        b in prop::collection::vec(2i64..=6, 1..=2),
        entries in prop::collection::vec(0i64..6, 6),
    ) {
        let ga = FgAbGroup::from_invariants(0, &a.iter().map(|&x| Int::from(x)).collect::<Vec<_>>());
        let gb = FgAbGroup::from_invariants(0, &b.iter().map(|&x| Int::from(x)).collect::<Vec<_>>());
        let mat = matrix(gb.user_generators(), ga.user_generators(), &entries);
        let h = GroupHom::from_user_matrix(&ga, &gb, &mat);
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        let elements = ga.elements().unwrap();
        prop_assume!(elements.len() <= 256);
        let kernel = elements.iter().filter(|x| gb.is_zero(&h.apply(x))).count();
        let image: BTreeSet<Vec<Int>> = elements.iter().map(|x| h.apply(x).coords().to_vec()).collect();
        prop_assert_eq!(kernel * image.len(), elements.len());
        prop_assert_eq!(h.kernel().0.order(), Some(Int::from(kernel)));
        prop_assert_eq!(h.image().0.order(), Some(Int::from(image.len())));
    }

    #[test]
    fn presentation_roundtrip(entries in prop::collection::vec(-6i64..=6, 9), coords in prop::collection::vec(-20i64..=20, 3)) {
        let rel = matrix(3, 3, &entries);
        let g = FgAbGroup::presented(3, &rel);
        for r in 0..3 {
            prop_assert!(g.is_zero(&g.from_user(&rel.row_vec(r))));
        }
        let u: Vec<Int> = coords.iter().map(|&c| Int::from(c)).collect();
        let x = g.from_user(&u);
        prop_assert_eq!(g.from_user(&g.to_user(&x)), x);
    }
}

#[test]
fn cyclic_tensor_and_tor_are_gcd() {
    for a in 1..=30i64 {
        for b in 1..=30i64 {
            let (ga, gb) = (FgAbGroup::cyclic(a), FgAbGroup::cyclic(b));
            let g = Int::from(a.gcd(&b));
            assert_eq!(tensor(&ga, &gb).group.order(), Some(g.clone()), "Z/{a} ⊗ Z/{b}");
            assert_eq!(tor1(&ga, &gb).order(), Some(g), "Tor(Z/{a}, Z/{b})");
        }
    }
}
