//! Independent brute-force oracles used for cross-validation of the main
//! decision procedures: Fourier–Motzkin feasibility, exhaustive choice
//! table enumeration, and an exchangeability check routed through the
//! factorial-enumeration symmetrizer instead of the LP kernel.
//!
//! Deliberately naive; every entry point carries an explosion guard.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::choice::{ChoiceTable, Entry, OptionPool};
use crate::desirability::GeneratorSet;
use crate::gamble::Gamble;
use crate::permutations;
use crate::rational::Rational;
use crate::{Error, Result};

/// Dimension cap for the Fourier–Motzkin oracle.
pub const FM_MAX_DIM: usize = 12;
/// Cap on non-slack columns for the Fourier–Motzkin oracle.
pub const FM_MAX_GENERATORS: usize = 6;
/// Cap on the number of tables the enumeration oracle will yield.
pub const ENUMERATION_BUDGET: usize = 1_000_000;

/// One linear inequality `Σ coeffs[j]·λ_j <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Inequality {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Inequality {
    /// Scales so the largest-magnitude coefficient is ±1; pure
    /// normalization for deduplication.
    fn normalize(mut self) -> Self {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        if !max.is_zero() {
            for c in self.coeffs.iter_mut() {
                *c /= &max;
            }
            self.rhs /= &max;
        }
        self
    }
}

/// Decides `∃ λ >= 0 : Σ_j λ_j columns[j] = target` by Fourier–Motzkin
/// elimination.  Independent of the simplex kernel.
///
/// Budget: `target.len() <= 12` and at most `target.len() + 6` columns
/// (the allowance beyond 6 covers sign-restricted slack columns, which do
/// not drive the elimination blow-up).
pub fn fm_feasible(columns: &[Vec<Rational>], target: &[Rational]) -> Result<bool> {
    let dim = target.len();
    if dim > FM_MAX_DIM || columns.len() > dim + FM_MAX_GENERATORS {
        return Err(Error::OracleBudget(format!(
            "Fourier-Motzkin limited to dimension {FM_MAX_DIM} and {FM_MAX_GENERATORS} \
             generator columns; got dimension {dim}, {} columns",
            columns.len()
        )));
    }
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

    // Equalities as inequality pairs, plus λ >= 0.
    let mut system: Vec<Inequality> = Vec::new();
    for i in 0..dim {
        let row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
        system.push(Inequality {
            coeffs: row.iter().map(|v| -v.clone()).collect(),
            rhs: -target[i].clone(),
        });
        system.push(Inequality {
            coeffs: row,
            rhs: target[i].clone(),
        });
    }
    for j in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[j] = -Rational::from_integer(1.into());
        system.push(Inequality {
            coeffs,
            rhs: Rational::zero(),
        });
    }

    // Eliminate each variable in turn.
    for var in 0..n {
        let mut zero_rows = Vec::new();
        let mut pos_rows = Vec::new();
        let mut neg_rows = Vec::new();
        for ineq in system {
            match ineq.coeffs[var].cmp(&Rational::zero()) {
                std::cmp::Ordering::Equal => zero_rows.push(ineq),
                std::cmp::Ordering::Greater => pos_rows.push(ineq),
                std::cmp::Ordering::Less => neg_rows.push(ineq),
            }
        }
        let mut next: BTreeSet<Inequality> = zero_rows.into_iter().map(|i| i.normalize()).collect();
        for p in &pos_rows {
            for q in &neg_rows {
                // p/p_var gives an upper bound, q/(-q_var) a lower bound;
                // their sum eliminates the variable.
                let a = &p.coeffs[var];
                let b = &q.coeffs[var]; // negative
                let coeffs: Vec<Rational> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(pc, qc)| pc * &-b.clone() + qc * a)
                    .collect();
                let rhs = &p.rhs * &-b.clone() + &q.rhs * a;
                next.insert(Inequality { coeffs, rhs }.normalize());
            }
        }
        system = next.into_iter().collect();
    }

    // All variables gone: feasible iff every residual constant constraint
    // 0 <= rhs holds.
    Ok(system.iter().all(|ineq| !ineq.rhs.is_negative()))
}

/// Every choice table over `pool` with the given domain and nonempty
/// chosen subsets, in a deterministic order (per-entry subsets by
/// increasing bitmask, entries varying fastest at the end).
pub fn enumerate_choice_tables(
    pool: &OptionPool,
    domain: &[BTreeSet<usize>],
) -> Result<Vec<ChoiceTable>> {
    let mut total: usize = 1;
    for o in domain {
        if o.is_empty() {
            return Err(Error::EmptyOptionSet);
        }
        let choices = (1usize << o.len()) - 1;
        total = total
            .checked_mul(choices)
            .filter(|&t| t <= ENUMERATION_BUDGET)
            .ok_or_else(|| {
                Error::OracleBudget(format!(
                    "choice-table enumeration exceeds {ENUMERATION_BUDGET} tables"
                ))
            })?;
    }

    // Per-entry candidate chosen subsets (nonempty), in bitmask order.
    let candidates: Vec<Vec<BTreeSet<usize>>> = domain
        .iter()
        .map(|o| {
            let items: Vec<usize> = o.iter().copied().collect();
            (1usize..1 << items.len())
                .map(|mask| {
                    items
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| mask & (1 << bit) != 0)
                        .map(|(_, &i)| i)
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut tables = Vec::with_capacity(total);
    let mut picks = vec![0usize; domain.len()];
    loop {
        let entries: Vec<Entry> = domain
            .iter()
            .zip(&picks)
            .enumerate()
            .map(|(k, (o, &p))| Entry {
                options: o.clone(),
                chosen: candidates[k][p].clone(),
            })
            .collect();
        tables.push(ChoiceTable::new(pool.clone(), entries)?);

        // Odometer increment, last entry fastest.
        let mut k = domain.len();
        loop {
            if k == 0 {
                return Ok(tables);
            }
            k -= 1;
            picks[k] += 1;
            if picks[k] < candidates[k].len() {
                break;
            }
            picks[k] = 0;
        }
    }
}

/// Exchangeability probe routed through the factorial symmetrizer and the
/// Fourier–Motzkin oracle: the assessment is consistent with
/// exchangeability iff no non-negative, not-all-zero combination of the
/// symmetrized generators is pointwise dominated by zero.
///
/// Vacuously true for the empty assessment.
pub fn brute_exchangeable(a: &GeneratorSet) -> Result<bool> {
    let symmetrized: Vec<Gamble> = a
        .generators()
        .iter()
        .map(permutations::symmetrize)
        .collect::<Result<_>>()?;
    if symmetrized.iter().any(|g| g.is_zero()) {
        // A generator in the indifference span symmetrizes to zero; the
        // induced cone would contain the zero gamble.
        return Ok(false);
    }
    let dim = a.space().size();
    let mut columns: Vec<Vec<Rational>> = symmetrized
        .iter()
        .map(|g| g.values().to_vec())
        .collect();
    for i in 0..dim {
        let mut unit = vec![Rational::zero(); dim];
        unit[i] = Rational::from_integer(1.into());
        columns.push(unit);
    }
    for g in &symmetrized {
        let neg: Vec<Rational> = g.values().iter().map(|v| -v.clone()).collect();
        if fm_feasible(&columns, &neg)? {
            return Ok(false);
        }
    }
    Ok(true)
}
