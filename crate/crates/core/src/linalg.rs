//! Small exact linear-algebra helpers: Gaussian elimination over the
//! rationals for solving column systems and for rank computation.

use num_traits::Zero;

use crate::rational::Rational;

/// Solves `Σ_j x_j cols[j] = target` exactly.  Returns one solution if the
/// system is consistent, `None` otherwise.  `cols` may be empty, in which
/// case only the zero target is solvable.
pub fn solve_exact(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n_cols = cols.len();
    let n_rows = target.len();
    debug_assert!(cols.iter().all(|c| c.len() == n_rows));

    // Augmented matrix [A | t], rows indexed by coordinate.
    let mut a: Vec<Vec<Rational>> = (0..n_rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n_cols {
        let Some(pr) = (row..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone().recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n_rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..=n_cols {
                    let delta = &a[row][c] * &factor;
                    a[r][c] -= delta;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n_rows {
            break;
        }
    }

    // Inconsistent if a zero row has non-zero RHS.
    for r in row..n_rows {
        if !a[r][n_cols].is_zero() {
            return None;
        }
    }

    let mut x = vec![Rational::zero(); n_cols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = a[r][n_cols].clone();
    }
    Some(x)
}

/// Rank of the column family.
pub fn rank(cols: &[Vec<Rational>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let n_rows = cols[0].len();
    let mut a: Vec<Vec<Rational>> = (0..n_rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut row = 0usize;
    for col in 0..cols.len() {
        let Some(pr) = (row..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone().recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n_rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols.len() {
                    let delta = &a[row][c] * &factor;
                    a[r][c] -= delta;
                }
            }
        }
        row += 1;
        if row == n_rows {
            break;
        }
    }
    row
}

/// True iff the columns are linearly independent.
pub fn independent(cols: &[Vec<Rational>]) -> bool {
    rank(cols) == cols.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn solves_consistent_system() {
        let cols = vec![
            vec![int(1), int(0), int(1)],
            vec![int(0), int(1), int(1)],
        ];
        let target = vec![int(2), int(3), int(5)];
        let x = solve_exact(&cols, &target).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
    }

    #[test]
    fn detects_inconsistency() {
        let cols = vec![vec![int(1), int(1)]];
        let target = vec![int(1), int(2)];
        assert!(solve_exact(&cols, &target).is_none());
    }

    #[test]
    fn empty_columns() {
        assert!(solve_exact(&[], &[int(0), int(0)]).is_some());
        assert!(solve_exact(&[], &[int(1)]).is_none());
    }

    #[test]
    fn rank_and_independence() {
        let cols = vec![
            vec![int(1), int(2)],
            vec![int(2), int(4)],
            vec![ratio(1, 2), int(0)],
        ];
        assert_eq!(rank(&cols), 2);
        assert!(!independent(&cols));
        assert!(independent(&cols[..1]));
    }
}
