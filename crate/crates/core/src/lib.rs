//! Exact-rational models of exchangeability for choice functions and sets of
//! desirable gambles.
//!
//! The crate works with gambles (rational-valued maps on a finite sequence
//! space `X^N`), the symmetrization projection over the permutation group,
//! the hypergeometric representation on count vectors, and the Bernstein
//! polynomial representation on the outcome simplex.  Finitely generated
//! sets of desirable gambles are queried through an exact simplex kernel,
//! and finite-domain choice tables are checked against the rationality
//! axioms and round-tripped through their count-space representations.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod bernstein;
pub mod choice;
pub mod countable;
pub mod counts;
pub mod desirability;
pub mod error;
pub mod gamble;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod oracles;
pub mod permutations;
pub mod rational;

pub use error::Error;
pub use gamble::{Gamble, OptionSet, OutcomeSpace, Sequence, SequenceSpace, Sign};
pub use rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;
