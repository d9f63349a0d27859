//! Exact LP feasibility kernel: decide whether a target vector is a
//! non-negative combination of given columns, returning either the
//! combination or a separating functional (Farkas certificate).
//!
//! Phase-1 simplex over exact rationals with Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

/// Outcome of a feasibility solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// `Σ_j coefficients[j] * columns[j] = target`, all coefficients >= 0.
    Feasible { coefficients: Vec<Rational> },
    /// `c` with `<c, columns[j]> >= 0` for all `j` and `<c, target> < 0`.
    Infeasible { separating: Vec<Rational> },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Decides `∃ λ >= 0 : Σ λ_j columns[j] = target`.
pub fn solve_nonneg_combination(
    columns: &[Vec<Rational>],
    target: &[Rational],
) -> Result<Feasibility> {
    let dim = target.len();
    for col in columns {
        if col.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} in a dimension-{} problem",
                col.len(),
                dim
            )));
        }
    }
    let n = columns.len();

    // Flip rows so the right-hand side is non-negative; artificials start
    // as the basis.
    let signs: Vec<i32> = target
        .iter()
        .map(|t| if t.is_negative() { -1 } else { 1 })
        .collect();
    let flip = |row: usize, v: &Rational| -> Rational {
        if signs[row] == -1 {
            -v.clone()
        } else {
            v.clone()
        }
    };

    // Tableau rows: dim constraint rows over n real + dim artificial
    // columns + RHS.  Objective: minimize the sum of artificials; the
    // objective row stores reduced costs and, in the last slot, minus the
    // current objective value.
    let width = n + dim + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for r in 0..dim {
        let mut row = Vec::with_capacity(width);
        for col in columns {
            row.push(flip(r, &col[r]));
        }
        for a in 0..dim {
            row.push(if a == r {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            });
        }
        row.push(flip(r, &target[r]));
        rows.push(row);
    }
    let mut basis: Vec<usize> = (n..n + dim).collect();

    // Reduced-cost row for cost 1 on artificials, 0 elsewhere: start from
    // c_j - sum over rows of the column (artificials are basic with cost 1).
    let mut obj: Vec<Rational> = vec![Rational::zero(); width];
    for (j, entry) in obj.iter_mut().enumerate().take(n) {
        let mut s = Rational::zero();
        for row in &rows {
            s += &row[j];
        }
        *entry = -s;
    }
    // Artificial columns start with reduced cost 0 (they are basic).
    let mut rhs_obj = Rational::zero();
    for row in &rows {
        rhs_obj -= &row[width - 1];
    }
    obj[width - 1] = rhs_obj; // minus the objective value

    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test; Bland tie-break on smallest basis variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[enter] > Rational::zero() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        // The phase-1 feasible region is bounded below by 0, so a pivot
        // row always exists.
        let leave = leave.expect("phase-1 objective is bounded");
        pivot(&mut rows, &mut obj, leave, enter, width);
        basis[leave] = enter;
    }

    // obj[width-1] holds minus the optimum of the artificial sum.
    if obj[width - 1].is_zero() {
        let mut coefficients = vec![Rational::zero(); n];
        for (r, &b) in basis.iter().enumerate() {
            if b < n {
                coefficients[b] = rows[r][width - 1].clone();
            }
            // A basic artificial at optimum carries value 0.
        }
        Ok(Feasibility::Feasible { coefficients })
    } else {
        // Dual values: y_i = cost of artificial i minus its reduced cost.
        // Map back through the row sign flips and negate to get the
        // separating functional.
        let separating: Vec<Rational> = (0..dim)
            .map(|i| {
                let y = Rational::from_integer(1.into()) - &obj[n + i];
                let y = if signs[i] == -1 { -y } else { y };
                -y
            })
            .collect();
        debug_assert!(verify_separating(columns, target, &separating));
        Ok(Feasibility::Infeasible { separating })
    }
}

fn pivot(
    rows: &mut [Vec<Rational>],
    obj: &mut [Rational],
    leave: usize,
    enter: usize,
    width: usize,
) {
    let inv = rows[leave][enter].clone().recip();
    for v in rows[leave].iter_mut() {
        *v *= &inv;
    }
    for r in 0..rows.len() {
        if r != leave && !rows[r][enter].is_zero() {
            let factor = rows[r][enter].clone();
            for c in 0..width {
                let delta = &rows[leave][c] * &factor;
                rows[r][c] -= delta;
            }
        }
    }
    if !obj[enter].is_zero() {
        let factor = obj[enter].clone();
        for c in 0..width {
            let delta = &rows[leave][c] * &factor;
            obj[c] -= delta;
        }
    }
}

/// Exact check of a separating functional.
pub fn verify_separating(
    columns: &[Vec<Rational>],
    target: &[Rational],
    c: &[Rational],
) -> bool {
    let dot = |v: &[Rational]| -> Rational { c.iter().zip(v).map(|(a, b)| a * b).sum() };
    columns.iter().all(|col| dot(col) >= Rational::zero()) && dot(target) < Rational::zero()
}

/// Exact check of a feasible combination.
pub fn verify_combination(
    columns: &[Vec<Rational>],
    target: &[Rational],
    lambda: &[Rational],
) -> bool {
    if lambda.len() != columns.len() || lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    let dim = target.len();
    let mut acc = vec![Rational::zero(); dim];
    for (l, col) in lambda.iter().zip(columns) {
        for (a, v) in acc.iter_mut().zip(col) {
            *a += l * v;
        }
    }
    acc == target
}
