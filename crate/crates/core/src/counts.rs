//! Count vectors, the counting map, permutation-invariant atoms, the
//! hypergeometric operator, its inverse lift, and the quotient-space view of
//! gambles modulo exchangeability.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::gamble::{Gamble, OutcomeSpace, Sequence, SequenceSpace};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// The composition of an urn: one non-negative count per outcome, summing
/// to the sequence length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountVector {
    counts: Vec<usize>,
}

impl CountVector {
    pub fn new(counts: Vec<usize>) -> Self {
        CountVector { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn key(&self) -> String {
        self.counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// All count vectors of a fixed total over an outcome space, enumerated in
/// the order of their lexicographically smallest atom members (first
/// outcome's count decreasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountSpace {
    base: Arc<OutcomeSpace>,
    total: usize,
    vectors: Vec<CountVector>,
}

impl CountSpace {
    pub fn new(base: Arc<OutcomeSpace>, total: usize) -> Self {
        let mut vectors = Vec::new();
        let mut prefix = Vec::with_capacity(base.size());
        enumerate_counts(base.size(), total, &mut prefix, &mut vectors);
        CountSpace {
            base,
            total,
            vectors,
        }
    }

    pub fn of(space: &SequenceSpace) -> Self {
        CountSpace::new(space.base().clone(), space.length())
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        &self.base
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn vectors(&self) -> &[CountVector] {
        &self.vectors
    }

    /// Stars-and-bars count `C(total + |X| - 1, |X| - 1)`.
    pub fn size(&self) -> usize {
        self.vectors.len()
    }

    pub fn index_of(&self, m: &CountVector) -> Option<usize> {
        self.vectors.iter().position(|v| v == m)
    }

    /// The sequence space the counts refer to.
    pub fn sequence_space(&self) -> Result<SequenceSpace> {
        SequenceSpace::new(self.base.clone(), self.total)
    }

    pub fn describe(&self) -> String {
        format!("counts({{{}}}, {})", self.base.labels().join(","), self.total)
    }
}

fn enumerate_counts(
    slots: usize,
    remaining: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<CountVector>,
) {
    if slots == 1 {
        prefix.push(remaining);
        out.push(CountVector::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for c in (0..=remaining).rev() {
        prefix.push(c);
        enumerate_counts(slots - 1, remaining - c, prefix, out);
        prefix.pop();
    }
}

/// A rational-valued map on the count vectors, indexed in `CountSpace`
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountGamble {
    space: CountSpace,
    values: Vec<Rational>,
}

impl CountGamble {
    pub fn new(space: CountSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::ValueCount {
                expected: space.size(),
                got: values.len(),
            });
        }
        Ok(CountGamble { space, values })
    }

    pub fn zero(space: CountSpace) -> Self {
        let n = space.size();
        CountGamble {
            space,
            values: vec![Rational::zero(); n],
        }
    }

    pub fn space(&self) -> &CountSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_space(&self, other: &CountGamble) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.describe(),
                other.space.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &CountGamble) -> Result<CountGamble> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CountGamble {
            space: self.space.clone(),
            values,
        })
    }

    pub fn scale(&self, lambda: &Rational) -> CountGamble {
        CountGamble {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v * lambda).collect(),
        }
    }

    pub fn negate(&self) -> CountGamble {
        self.scale(&int(-1))
    }

    pub fn leq(&self, other: &CountGamble) -> Result<bool> {
        self.check_space(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }
}

/// The counting map: occurrences of each outcome in a sequence.
pub fn count_of(space: &SequenceSpace, x: &Sequence) -> Result<CountVector> {
    if x.len() != space.length() {
        return Err(Error::LengthMismatch {
            expected: space.length(),
            got: x.len(),
        });
    }
    let mut counts = vec![0usize; space.base().size()];
    for &e in &x.entries {
        counts[e] += 1;
    }
    Ok(CountVector::new(counts))
}

/// All sequences with count vector `m`, lexicographically sorted.
pub fn atom_members(space: &SequenceSpace, m: &CountVector) -> Vec<Sequence> {
    let mut remaining = m.counts().to_vec();
    let mut prefix = Vec::with_capacity(space.length());
    let mut out = Vec::new();
    atom_rec(space.length(), &mut remaining, &mut prefix, &mut out);
    out
}

fn atom_rec(
    slots: usize,
    remaining: &mut Vec<usize>,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Sequence>,
) {
    if slots == 0 {
        out.push(Sequence::new(prefix.clone()));
        return;
    }
    for z in 0..remaining.len() {
        if remaining[z] > 0 {
            remaining[z] -= 1;
            prefix.push(z);
            atom_rec(slots - 1, remaining, prefix, out);
            prefix.pop();
            remaining[z] += 1;
        }
    }
}

/// The multinomial coefficient `N! / prod_z m_z!`.
pub fn atom_size(m: &CountVector) -> usize {
    let mut result: u128 = 1;
    let mut placed = 0usize;
    // prod over outcomes of C(placed + m_z, m_z)
    for &c in m.counts() {
        for j in 1..=c {
            result = result * (placed + j) as u128 / j as u128;
        }
        placed += c;
    }
    result as usize
}

/// `Hy(f | m)`: the uniform average of `f` over the atom of `m`.
pub fn hy_expectation(f: &Gamble, m: &CountVector) -> Result<Rational> {
    if m.counts().len() != f.space().base().size() || m.total() != f.space().length() {
        return Err(Error::DimensionMismatch(format!(
            "count vector {m} does not match space {}",
            f.space().describe()
        )));
    }
    let members = atom_members(f.space(), m);
    let mut sum = Rational::zero();
    for y in &members {
        sum += &f.values()[f.space().index_of(y)?];
    }
    Ok(sum / int(members.len() as i64))
}

/// The map to count gambles: componentwise atom averages.
pub fn hy_map(f: &Gamble) -> Result<CountGamble> {
    let cspace = CountSpace::of(f.space());
    let values = cspace
        .vectors()
        .iter()
        .map(|m| hy_expectation(f, m))
        .collect::<Result<Vec<_>>>()?;
    CountGamble::new(cspace, values)
}

/// The permutation-invariant representative `Σ_m g(m) 1_{atom(m)}`;
/// `hy_map` of the result recovers `g`.
pub fn lift_count_gamble(g: &CountGamble) -> Result<Gamble> {
    let space = g.space().sequence_space()?;
    let mut values = Vec::with_capacity(space.size());
    for x in space.sequences() {
        let m = count_of(&space, &x)?;
        let idx = g
            .space()
            .index_of(&m)
            .ok_or_else(|| Error::DimensionMismatch(format!("count vector {m} not enumerated")))?;
        values.push(g.values()[idx].clone());
    }
    Gamble::new(space, values)
}

/// The atom-average route to the symmetrization projection:
/// `Σ_m Hy(f|m) 1_{atom(m)}`.  Must agree with the `N!`-enumeration route
/// in `permutations::symmetrize`.
pub fn ex_via_atoms(f: &Gamble) -> Result<Gamble> {
    lift_count_gamble(&hy_map(f)?)
}

/// Canonical representative of the equivalence class of `f` (the projection
/// of `f` onto the permutation-invariant gambles).
pub fn canonical_representative(f: &Gamble) -> Result<Gamble> {
    ex_via_atoms(f)
}

/// Class equality: equal hypergeometric images.
pub fn class_equal(f: &Gamble, g: &Gamble) -> Result<bool> {
    if f.space() != g.space() {
        return Err(Error::SpaceMismatch(
            f.space().describe(),
            g.space().describe(),
        ));
    }
    Ok(hy_map(f)? == hy_map(g)?)
}

/// Class order: componentwise order of the hypergeometric images.
pub fn class_leq(f: &Gamble, g: &Gamble) -> Result<bool> {
    if f.space() != g.space() {
        return Err(Error::SpaceMismatch(
            f.space().describe(),
            g.space().describe(),
        ));
    }
    hy_map(f)?.leq(&hy_map(g)?)
}
