//! Outcome and sequence spaces, gambles as exact rational vectors, option
//! sets, and the pointwise order.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// The finite set of outcomes, with a fixed label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeSpace {
    labels: Vec<String>,
}

impl OutcomeSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyOutcomeSpace);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateOutcome(l.clone()));
            }
        }
        Ok(Arc::new(OutcomeSpace { labels }))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sequence keys concatenate labels; a separator is needed as soon as
    /// one label is longer than a single character.
    pub fn needs_separator(&self) -> bool {
        self.labels.iter().any(|l| l.chars().count() > 1)
    }
}

/// The possibility space `X^N`, with sequences enumerated lexicographically
/// by outcome index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSpace {
    base: Arc<OutcomeSpace>,
    length: usize,
}

impl SequenceSpace {
    pub fn new(base: Arc<OutcomeSpace>, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::BadInput("sequence length must be positive".into()));
        }
        Ok(SequenceSpace { base, length })
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        &self.base
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `|X|^N`.
    pub fn size(&self) -> usize {
        self.base.size().pow(self.length as u32)
    }

    /// Index of a sequence in the lexicographic enumeration (mixed radix,
    /// first entry most significant).
    pub fn index_of(&self, seq: &Sequence) -> Result<usize> {
        if seq.entries.len() != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length,
                got: seq.entries.len(),
            });
        }
        let k = self.base.size();
        let mut idx = 0usize;
        for &e in &seq.entries {
            if e >= k {
                return Err(Error::BadInput(format!("outcome index {e} out of range")));
            }
            idx = idx * k + e;
        }
        Ok(idx)
    }

    pub fn sequence_at(&self, mut idx: usize) -> Sequence {
        let k = self.base.size();
        let mut entries = vec![0usize; self.length];
        for slot in entries.iter_mut().rev() {
            *slot = idx % k;
            idx /= k;
        }
        Sequence { entries }
    }

    pub fn sequences(&self) -> impl Iterator<Item = Sequence> + '_ {
        (0..self.size()).map(|i| self.sequence_at(i))
    }

    pub fn describe(&self) -> String {
        format!("{{{}}}^{}", self.base.labels.join(","), self.length)
    }

    pub fn key_of(&self, seq: &Sequence) -> String {
        let labels: Vec<&str> = seq.entries.iter().map(|&e| self.base.label(e)).collect();
        if self.base.needs_separator() {
            labels.join(",")
        } else {
            labels.concat()
        }
    }
}

/// One element of `X^N`, stored as outcome indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    pub entries: Vec<usize>,
}

impl Sequence {
    pub fn new(entries: Vec<usize>) -> Self {
        Sequence { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Sign classification of a gamble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Mixed,
}

/// A rational-valued map on `X^N`, stored densely in lexicographic
/// sequence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gamble {
    space: SequenceSpace,
    values: Vec<Rational>,
}

impl Gamble {
    pub fn new(space: SequenceSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::ValueCount {
                expected: space.size(),
                got: values.len(),
            });
        }
        Ok(Gamble { space, values })
    }

    pub fn zero(space: SequenceSpace) -> Self {
        let n = space.size();
        Gamble {
            space,
            values: vec![Rational::zero(); n],
        }
    }

    pub fn constant(space: SequenceSpace, c: Rational) -> Self {
        let n = space.size();
        Gamble {
            space,
            values: vec![c; n],
        }
    }

    /// Indicator of a single sequence.
    pub fn indicator(space: SequenceSpace, seq: &Sequence) -> Result<Self> {
        let idx = space.index_of(seq)?;
        let mut g = Gamble::zero(space);
        g.values[idx] = rational::one();
        Ok(g)
    }

    pub fn space(&self) -> &SequenceSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value_at(&self, seq: &Sequence) -> Result<&Rational> {
        Ok(&self.values[self.space.index_of(seq)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_space(&self, other: &Gamble) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.describe(),
                other.space.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Gamble) -> Result<Gamble> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Gamble {
            space: self.space.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &Gamble) -> Result<Gamble> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Gamble {
            space: self.space.clone(),
            values,
        })
    }

    pub fn scale(&self, lambda: &Rational) -> Gamble {
        Gamble {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v * lambda).collect(),
        }
    }

    pub fn negate(&self) -> Gamble {
        Gamble {
            space: self.space.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// Pointwise `self(x) <= other(x)` for all `x`.
    pub fn leq(&self, other: &Gamble) -> Result<bool> {
        self.check_space(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// Dominance with inequality: `self <= other` pointwise and the two
    /// gambles differ somewhere (not strict at every point).
    pub fn strictly_below(&self, other: &Gamble) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    pub fn sign(&self) -> Sign {
        let any_pos = self.values.iter().any(|v| v > &Rational::zero());
        let any_neg = self.values.iter().any(|v| v < &Rational::zero());
        match (any_pos, any_neg) {
            (false, false) => Sign::Zero,
            (true, false) => Sign::Positive,
            (false, true) => Sign::Negative,
            (true, true) => Sign::Mixed,
        }
    }
}

impl fmt::Display for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .space
            .sequences()
            .zip(&self.values)
            .map(|(s, v)| format!("{}: {}", self.space.key_of(&s), rational::format(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A non-empty finite set of distinct gambles on one shared space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionSet {
    members: Vec<Gamble>,
}

impl OptionSet {
    pub fn new(members: Vec<Gamble>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyOptionSet);
        }
        for (i, m) in members.iter().enumerate() {
            if members[..i].contains(m) {
                return Err(Error::DuplicateOption);
            }
            if m.space() != members[0].space() {
                return Err(Error::SpaceMismatch(
                    members[0].space().describe(),
                    m.space().describe(),
                ));
            }
        }
        Ok(OptionSet { members })
    }

    pub fn members(&self) -> &[Gamble] {
        &self.members
    }

    pub fn space(&self) -> &SequenceSpace {
        self.members[0].space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ab2() -> SequenceSpace {
        SequenceSpace::new(OutcomeSpace::new(["a", "b"]).unwrap(), 2).unwrap()
    }

    fn g(space: &SequenceSpace, vals: &[(i64, i64)]) -> Gamble {
        Gamble::new(
            space.clone(),
            vals.iter().map(|&(n, d)| ratio(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn lexicographic_enumeration() {
        let s = ab2();
        let keys: Vec<String> = s.sequences().map(|q| s.key_of(&q)).collect();
        assert_eq!(keys, ["aa", "ab", "ba", "bb"]);
        for (i, q) in s.sequences().enumerate() {
            assert_eq!(s.index_of(&q).unwrap(), i);
        }
    }

    #[test]
    fn indicator_addition() {
        let s = ab2();
        let f = Gamble::indicator(s.clone(), &Sequence::new(vec![0, 0])).unwrap();
        let h = Gamble::indicator(s.clone(), &Sequence::new(vec![0, 1])).unwrap();
        let sum = f.add(&h).unwrap();
        assert_eq!(sum.values(), &[int(1), int(1), int(0), int(0)]);
    }

    #[test]
    fn scaling() {
        let s = ab2();
        let f = g(&s, &[(2, 1), (-4, 1), (0, 1), (1, 1)]);
        assert!(f.scale(&int(0)).is_zero());
        let scaled = f.scale(&ratio(3, 2));
        assert_eq!(
            scaled.values(),
            &[int(3), int(-6), int(0), ratio(3, 2)]
        );
    }

    #[test]
    fn pointwise_order() {
        let s = ab2();
        let zero = Gamble::zero(s.clone());
        let ind = Gamble::indicator(s.clone(), &Sequence::new(vec![0, 0])).unwrap();
        assert!(zero.leq(&ind).unwrap());
        assert!(zero.strictly_below(&ind).unwrap());
        assert!(!ind.strictly_below(&ind).unwrap());
        let mixed = g(&s, &[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert!(!mixed.leq(&zero).unwrap());
        assert!(!zero.leq(&mixed).unwrap());
    }

    #[test]
    fn sign_classification() {
        let s = ab2();
        assert_eq!(Gamble::zero(s.clone()).sign(), Sign::Zero);
        let ind = Gamble::indicator(s.clone(), &Sequence::new(vec![0, 0])).unwrap();
        assert_eq!(ind.sign(), Sign::Positive);
        assert_eq!(ind.negate().sign(), Sign::Negative);
        let ab = Gamble::indicator(s.clone(), &Sequence::new(vec![0, 1])).unwrap();
        let ba = Gamble::indicator(s.clone(), &Sequence::new(vec![1, 0])).unwrap();
        assert_eq!(ab.sub(&ba).unwrap().sign(), Sign::Mixed);
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let s2 = ab2();
        let s3 = SequenceSpace::new(OutcomeSpace::new(["a", "b"]).unwrap(), 3).unwrap();
        let f = Gamble::zero(s2);
        let h = Gamble::zero(s3);
        assert!(f.add(&h).is_err());
        assert!(f.leq(&h).is_err());
    }

    #[test]
    fn option_set_rejects_duplicates_and_empty() {
        let s = ab2();
        let f = Gamble::zero(s.clone());
        assert!(OptionSet::new(vec![]).is_err());
        assert!(OptionSet::new(vec![f.clone(), f]).is_err());
    }

    #[test]
    fn separator_for_long_labels() {
        let base = OutcomeSpace::new(["lo", "hi"]).unwrap();
        let s = SequenceSpace::new(base, 2).unwrap();
        assert_eq!(s.key_of(&Sequence::new(vec![0, 1])), "lo,hi");
    }
}
