//! Exact phase-one simplex for `A x = b, x >= 0`.
//!
//! Dense tableau over big rationals with Bland's smallest-index rule, which
//! terminates on the degenerate bases that `{-1, 0, +1}` systems produce.

use num_traits::{Signed, Zero};

use crate::model::Rational;

/// Finds a nonnegative solution of `A x = b`, or `None` when there is none.
///
/// `a` is row-major with one row per equation; every row must have the same
/// length.
pub fn find_nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "one right-hand side per row");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;

    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v } else { v.clone() };
        }
        t[n + i] = Rational::from_integer(1.into());
        t[rhs] = if flip { -bi } else { bi.clone() };
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Rational::zero(); width];
    for row in &tableau {
        for j in (0..n).chain(std::iter::once(rhs)) {
            cost[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a positive pivot exists.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tableau[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tableau[row].clone();
    let eliminate = |target: &mut [Rational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for (t, pv) in target.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *t -= &factor * pv;
            }
        }
    };
    for (i, r) in tableau.iter_mut().enumerate() {
        if i != row {
            eliminate(r);
        }
    }
    eliminate(cost);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::int;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn vec_of(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(x).map(|(a, x)| a * x).sum();
            assert_eq!(&lhs, bi);
        }
    }

    #[test]
    fn feasible_system() {
        let a = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec_of(&[2, 3]);
        let x = find_nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn fractional_solution() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let b = vec_of(&[1, 1]);
        let x = find_nonnegative_solution(&a, &b).unwrap();
        assert_eq!(x[0], Rational::new(1.into(), 2.into()));
        assert_eq!(x[1], Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn infeasible_sign() {
        let a = mat(&[&[1, 1]]);
        assert!(find_nonnegative_solution(&a, &vec_of(&[-1])).is_none());
    }

    #[test]
    fn infeasible_combination() {
        // x0 - x1 = 1 and x1 - x0 = 1.
        let a = mat(&[&[1, -1], &[-1, 1]]);
        assert!(find_nonnegative_solution(&a, &vec_of(&[1, 1])).is_none());
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        let a = mat(&[&[1, -1, 1, 0], &[1, -1, 1, 0], &[0, 0, 0, 0], &[-1, 1, 0, 1]]);
        let b = vec_of(&[1, 1, 0, 0]);
        let x = find_nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn empty_system() {
        assert_eq!(find_nonnegative_solution(&[], &[]), Some(vec![]));
        let a = vec![Vec::<Rational>::new()];
        assert!(find_nonnegative_solution(&a, &vec_of(&[1])).is_none());
        assert!(find_nonnegative_solution(&a, &vec_of(&[0])).is_some());
    }
}
