use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{extended_gcd, IntegerMatrix};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * A = H`. `H` is in row echelon
/// form, pivots are positive, entries above a pivot lie in `[0, pivot)` and
/// zero rows sit at the bottom.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut pivot_row = 0;

    for col in 0..n {
        if pivot_row == m {
            break;
        }
        for r in pivot_row + 1..m {
            if h.get(r, col).is_zero() {
                continue;
            }
            let p = h.get(pivot_row, col).clone();
            let b = h.get(r, col).clone();
            let (g, x, y) = extended_gcd(&p, &b);
            let z = -(&b / &g);
            let w = &p / &g;
            h.combine_rows(pivot_row, r, [&x, &y, &z, &w]);
            u.combine_rows(pivot_row, r, [&x, &y, &z, &w]);
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(r, pivot_row, &f);
                u.add_row_multiple(r, pivot_row, &f);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_abs_position(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_position(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    let f = -q;
                    d.add_row_multiple(i, t, &f);
                    u.add_row_multiple(i, t, &f);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    let f = -q;
                    d.add_col_multiple(j, t, &f);
                    v.add_col_multiple(j, t, &f);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_row_hnf(h: &IntegerMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(j) => {
                    if seen_zero_row || last_pivot.is_some_and(|p| j <= p) {
                        return false;
                    }
                    let p = h.get(i, j);
                    if !p.is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        let x = h.get(r, j);
                        if x.is_negative() || x >= p {
                            return false;
                        }
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity() {
        let id = IntegerMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_already_reduced() {
        let a = IntegerMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(u.mul(&a).unwrap(), h);
    }

    #[test]
    fn hnf_with_zero_rows_and_negative_pivots() {
        let a = IntegerMatrix::from_i64(&[&[0, -3, 6], &[0, 2, -4], &[4, 1, 1], &[-8, -2, -2]]);
        let (h, u) = hermite_normal_form(&a);
        assert!(is_row_hnf(&h), "{h:?}");
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(h.row(3).iter().all(Zero::is_zero));
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntegerMatrix::identity(4));
        assert_eq!(s.d, IntegerMatrix::identity(4));
    }

    #[test]
    fn snf_two_three() {
        let a = IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = IntegerMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank(), 0);
        let a = IntegerMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1], &[-1, -1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
    }

    #[test]
    fn normal_forms_deterministic() {
        let a = IntegerMatrix::from_i64(&[&[4, 6, -2], &[3, -9, 7], &[0, 5, 5]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&a));
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }
}
