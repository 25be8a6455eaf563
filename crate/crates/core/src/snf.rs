//! Smith normal form with recorded unimodular transforms.
//!
//! For an `r x c` matrix `A` we compute unimodular `U` (r x r) and `V` (c x c)
//! with `U * A * V = D`, where `D` is diagonal with non-negative entries
//! `d_1 | d_2 | ... | d_s` followed by zeros. The inverses of `U` and `V` are
//! maintained alongside so that coordinate changes in both directions are exact.
//!
//! Pivots are always chosen of minimal absolute value among the remaining
//! entries, which keeps the intermediate growth of the entries small.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{Int, IntMatrix};

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal of `D`, of length `min(r, c)`.
    pub diagonal: Vec<Int>,
    /// Number of non-zero diagonal entries.
    pub rank: usize,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    /// The full diagonal matrix `D`, shaped like the input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.rows());
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn row_add(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        let neg = -k;
        self.u_inv.add_col_multiple(src, dst, &neg);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        let neg = -k;
        self.v_inv.add_row_multiple(src, dst, &neg);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a non-zero entry of minimal absolute value in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), Int)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                let better = match &best {
                    None => true,
                    Some((_, b)) => abs < *b,
                };
                if better {
                    let done = abs.is_one();
                    best = Some(((i, j), abs));
                    if done {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_pivot(t) else {
            return false;
        };
        self.row_swap(t, pi);
        self.col_swap(t, pj);
        loop {
            let pivot = self.a[(t, t)].clone();
            for i in t + 1..self.a.rows() {
                if !self.a[(i, t)].is_zero() {
                    let q = self.a[(i, t)].div_floor(&pivot);
                    self.row_add(i, t, &-q);
                }
            }
            for j in t + 1..self.a.cols() {
                if !self.a[(t, j)].is_zero() {
                    let q = self.a[(t, j)].div_floor(&pivot);
                    self.col_add(j, t, &-q);
                }
            }
            // Any remainder left in the pivot row or column is smaller than the pivot.
            let mut smallest: Option<(bool, usize, Int)> = None;
            for i in t + 1..self.a.rows() {
                let v = &self.a[(i, t)];
                if !v.is_zero() && smallest.as_ref().is_none_or(|s| v.abs() < s.2) {
                    smallest = Some((true, i, v.abs()));
                }
            }
            for j in t + 1..self.a.cols() {
                let v = &self.a[(t, j)];
                if !v.is_zero() && smallest.as_ref().is_none_or(|s| v.abs() < s.2) {
                    smallest = Some((false, j, v.abs()));
                }
            }
            if let Some((is_row, k, _)) = smallest {
                if is_row {
                    self.row_swap(t, k);
                } else {
                    self.col_swap(t, k);
                }
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            let mut offender = None;
            'search: for i in t + 1..self.a.rows() {
                for j in t + 1..self.a.cols() {
                    if !self.a[(i, j)].is_multiple_of(&pivot) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => self.row_add(t, i, &Int::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.row_negate(t);
        }
        true
    }
}

/// Computes the Smith normal form of `a` together with both transforms and their inverses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (r, c) = (a.rows(), a.cols());
    let mut red = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let s = r.min(c);
    let mut rank = 0;
    for t in 0..s {
        if !red.reduce_at(t) {
            break;
        }
        rank += 1;
    }
    let diagonal = (0..s).map(|i| red.a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        rank,
        left: red.u,
        left_inv: red.u_inv,
        right: red.v,
        right_inv: red.v_inv,
    }
}

/// A basis of the integer kernel `{x : a x = 0}`, as the columns of the returned matrix.
pub fn integer_nullspace(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<Vec<Int>> = (snf.rank..a.cols()).map(|j| snf.right.column(j)).collect();
    IntMatrix::from_columns(a.cols(), &cols)
}

/// Some integer solution of `a x = y`, if one exists.
pub fn solve_integer(a: &IntMatrix, y: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), y.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let uy = snf.left.mul_vec(y);
    let mut z = vec![Int::zero(); a.cols()];
    for (i, rhs) in uy.iter().enumerate() {
        let d = snf.diagonal.get(i).filter(|d| !d.is_zero());
        match d {
            Some(d) => {
                let (q, rem) = rhs.div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                z[i] = q;
            }
            None => {
                if !rhs.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.right.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn check(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        assert_eq!(snf.left.mul(a).mul(&snf.right), snf.diagonal_matrix());
        assert!(snf.left.mul(&snf.left_inv).is_identity());
        assert!(snf.right.mul(&snf.right_inv).is_identity());
        for w in snf.diagonal[..snf.rank].windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn diagonalizes_small_examples() {
        let snf = check(&IntMatrix::from_i64(2, &[&[2, 4], &[4, 8]]));
        assert_eq!(snf.diagonal, vec![int(2), int(0)]);
        let snf = check(&IntMatrix::from_i64(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(snf.diagonal, vec![int(1), int(6)]);
        let snf = check(&IntMatrix::from_i64(3, &[&[6, 4, 10], &[-3, 9, 0]]));
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let a = IntMatrix::from_i64(3, &[&[1, 2, 3], &[2, 4, 6]]);
        let n = integer_nullspace(&a);
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
        let x = solve_integer(&a, &[int(5), int(10)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(5), int(10)]);
        assert!(solve_integer(&a, &[int(1), int(1)]).is_none());
        let two = IntMatrix::from_i64(1, &[&[2]]);
        assert!(solve_integer(&two, &[int(3)]).is_none());
    }
}
