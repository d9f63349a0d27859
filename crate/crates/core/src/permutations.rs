//! The permutation group on sequence indices, its lifted action on gambles,
//! the symmetrization projection, and a basis of the indifference space.

use itertools::Itertools;

use crate::counts::{self, CountSpace};
use crate::gamble::{Gamble, Sequence, SequenceSpace};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Default cap on the sequence length for `N!` enumeration (7! = 5040).
pub const DEFAULT_PERMUTATION_CAP: usize = 7;

/// A permutation of `{0, ..., N-1}` stored by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `(πx)_k = x_{π(k)}`.
    pub fn apply(&self, x: &Sequence) -> Result<Sequence> {
        if x.len() != self.image.len() {
            return Err(Error::LengthMismatch {
                expected: self.image.len(),
                got: x.len(),
            });
        }
        Ok(Sequence::new(
            self.image.iter().map(|&k| x.entries[k]).collect(),
        ))
    }
}

/// All `N!` permutations of `{0, ..., n-1}`, in lexicographic image order.
pub fn all_permutations(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n > cap {
        return Err(Error::PermutationCap(n, cap));
    }
    Ok((0..n)
        .permutations(n)
        .map(|image| Permutation { image })
        .collect())
}

/// `(π^t f)(x) = f(πx)`.
pub fn lift_gamble(pi: &Permutation, f: &Gamble) -> Result<Gamble> {
    let space = f.space();
    if pi.len() != space.length() {
        return Err(Error::LengthMismatch {
            expected: space.length(),
            got: pi.len(),
        });
    }
    let mut values = Vec::with_capacity(space.size());
    for x in space.sequences() {
        let px = pi.apply(&x)?;
        values.push(f.values()[space.index_of(&px)?].clone());
    }
    Gamble::new(space.clone(), values)
}

/// The projection `ex(f) = (1/N!) Σ_π π^t f`, by direct enumeration of all
/// `N!` permutations.  The atom-average shortcut lives in `counts` and the
/// two paths are cross-tested.
pub fn symmetrize_with_cap(f: &Gamble, cap: usize) -> Result<Gamble> {
    let n = f.space().length();
    let perms = all_permutations(n, cap)?;
    let mut acc = Gamble::zero(f.space().clone());
    for pi in &perms {
        acc = acc.add(&lift_gamble(pi, f)?)?;
    }
    let factorial = int(perms.len() as i64);
    Ok(acc.scale(&factorial.recip()))
}

pub fn symmetrize(f: &Gamble) -> Result<Gamble> {
    symmetrize_with_cap(f, DEFAULT_PERMUTATION_CAP)
}

/// True iff `π^t f = f` for all permutations, checked as constancy on every
/// permutation-invariant atom.
pub fn is_permutation_invariant(f: &Gamble) -> bool {
    let cspace = CountSpace::of(f.space());
    for m in cspace.vectors() {
        let members = counts::atom_members(f.space(), m);
        let first = &f.values()[f.space().index_of(&members[0]).unwrap()];
        for y in &members[1..] {
            if &f.values()[f.space().index_of(y).unwrap()] != first {
                return false;
            }
        }
    }
    true
}

/// A basis of the indifference space `ker(ex)`: one vector `1_y - 1_{y_m}`
/// per atom member `y` other than the canonical (lexicographically
/// smallest) representative `y_m`.
#[derive(Debug, Clone)]
pub struct IndifferenceBasis {
    space: SequenceSpace,
    vectors: Vec<Gamble>,
}

impl IndifferenceBasis {
    pub fn space(&self) -> &SequenceSpace {
        &self.space
    }

    pub fn vectors(&self) -> &[Gamble] {
        &self.vectors
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

pub fn indifference_basis(space: &SequenceSpace) -> IndifferenceBasis {
    let cspace = CountSpace::of(space);
    let mut vectors = Vec::new();
    for m in cspace.vectors() {
        let members = counts::atom_members(space, m);
        let rep = Gamble::indicator(space.clone(), &members[0]).unwrap();
        for y in &members[1..] {
            let v = Gamble::indicator(space.clone(), y).unwrap().sub(&rep).unwrap();
            vectors.push(v);
        }
    }
    IndifferenceBasis {
        space: space.clone(),
        vectors,
    }
}

/// Decides membership of `f` in the span of the indifference basis by an
/// exact linear solve; equivalent to `ex(f) = 0`.
pub fn in_indifference_span(basis: &IndifferenceBasis, f: &Gamble) -> Result<bool> {
    if f.space() != &basis.space {
        return Err(Error::SpaceMismatch(
            basis.space.describe(),
            f.space().describe(),
        ));
    }
    let cols: Vec<Vec<Rational>> = basis
        .vectors
        .iter()
        .map(|v| v.values().to_vec())
        .collect();
    Ok(crate::linalg::solve_exact(&cols, f.values()).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamble::OutcomeSpace;
    use crate::rational::ratio;

    fn space(labels: &[&str], n: usize) -> SequenceSpace {
        SequenceSpace::new(OutcomeSpace::new(labels.to_vec()).unwrap(), n).unwrap()
    }

    fn ind(s: &SequenceSpace, entries: &[usize]) -> Gamble {
        Gamble::indicator(s.clone(), &Sequence::new(entries.to_vec())).unwrap()
    }

    #[test]
    fn apply_identity_and_swap() {
        let x = Sequence::new(vec![0, 1]);
        let id = Permutation::identity(2);
        assert_eq!(id.apply(&x).unwrap(), x);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(swap.apply(&x).unwrap(), Sequence::new(vec![1, 0]));
    }

    #[test]
    fn apply_three_cycle() {
        // pi maps position k to x_{pi(k)}; with image [1, 2, 0] and
        // x = (a, b, c) the result is (x_1, x_2, x_0) = (b, c, a).
        let pi = Permutation::new(vec![1, 2, 0]).unwrap();
        let x = Sequence::new(vec![0, 1, 2]);
        assert_eq!(pi.apply(&x).unwrap(), Sequence::new(vec![1, 2, 0]));
    }

    #[test]
    fn invalid_permutation_rejected() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn lift_indicator_under_swap() {
        let s = space(&["a", "b"], 2);
        let f = ind(&s, &[0, 1]); // 1_{(a,b)}
        let swap = Permutation::new(vec![1, 0]).unwrap();
        // (pi^t f)(x) = f(pi x) = 1 iff pi x = (a,b) iff x = (b,a).
        assert_eq!(lift_gamble(&swap, &f).unwrap(), ind(&s, &[1, 0]));
        let id = Permutation::identity(2);
        assert_eq!(lift_gamble(&id, &f).unwrap(), f);
    }

    #[test]
    fn symmetrize_indicator() {
        let s = space(&["a", "b"], 2);
        let f = ind(&s, &[0, 1]);
        let ex = symmetrize(&f).unwrap();
        assert_eq!(
            ex.values(),
            &[ratio(0, 1), ratio(1, 2), ratio(1, 2), ratio(0, 1)]
        );
    }

    #[test]
    fn symmetrize_fixed_point_and_kernel() {
        let s = space(&["a", "b"], 2);
        let c = Gamble::constant(s.clone(), ratio(1, 1));
        assert_eq!(symmetrize(&c).unwrap(), c);
        let k = ind(&s, &[0, 1]).sub(&ind(&s, &[1, 0])).unwrap();
        assert!(symmetrize(&k).unwrap().is_zero());
    }

    #[test]
    fn cap_enforced() {
        let s = space(&["a", "b"], 3);
        let f = Gamble::zero(s);
        assert!(matches!(
            symmetrize_with_cap(&f, 2),
            Err(Error::PermutationCap(3, 2))
        ));
    }

    #[test]
    fn invariance_check() {
        let s = space(&["a", "b"], 2);
        assert!(is_permutation_invariant(&Gamble::constant(
            s.clone(),
            ratio(1, 1)
        )));
        assert!(!is_permutation_invariant(&ind(&s, &[0, 1])));
        let sym = ind(&s, &[0, 1]).add(&ind(&s, &[1, 0])).unwrap();
        assert!(is_permutation_invariant(&sym));
    }

    #[test]
    fn basis_dimensions() {
        let s2 = space(&["a", "b"], 2);
        let b2 = indifference_basis(&s2);
        assert_eq!(b2.dimension(), 1); // 4 - 3
        // The one vector is 1_{ba} - 1_{ab}.
        assert_eq!(
            b2.vectors()[0],
            ind(&s2, &[1, 0]).sub(&ind(&s2, &[0, 1])).unwrap()
        );
        let s1 = space(&["a", "b"], 1);
        assert_eq!(indifference_basis(&s1).dimension(), 0);
        let s3 = space(&["a", "b"], 3);
        assert_eq!(indifference_basis(&s3).dimension(), 4); // 8 - 4
    }

    #[test]
    fn basis_vectors_are_kernel_elements() {
        let s = space(&["a", "b"], 3);
        for v in indifference_basis(&s).vectors() {
            assert!(symmetrize(v).unwrap().is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let s = space(&["a", "b"], 2);
        let basis = indifference_basis(&s);
        let k = ind(&s, &[1, 0]).sub(&ind(&s, &[0, 1])).unwrap();
        assert!(in_indifference_span(&basis, &k.scale(&ratio(5, 3))).unwrap());
        assert!(!in_indifference_span(&basis, &ind(&s, &[0, 0])).unwrap());
    }
}
