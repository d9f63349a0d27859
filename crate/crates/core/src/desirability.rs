//! Finitely generated sets of desirable gambles: cone membership through
//! the exact LP kernel, coherence, exchangeability, the exchangeable
//! natural extension, and the desirability halves of the representation
//! theorems.

use num_traits::Zero;

use crate::bernstein::{self, BernsteinPoly};
use crate::counts::{self, CountGamble, CountSpace};
use crate::gamble::{Gamble, SequenceSpace};
use crate::lp::{self, Feasibility};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// A finite assessment: distinct nonzero gambles on one space.  The
/// modeled cone is `Posi(A ∪ {point indicators})`, i.e. the natural
/// extension of the assessment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    space: SequenceSpace,
    generators: Vec<Gamble>,
}

impl GeneratorSet {
    pub fn new(space: SequenceSpace, generators: Vec<Gamble>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            if g.space() != &space {
                return Err(Error::SpaceMismatch(
                    space.describe(),
                    g.space().describe(),
                ));
            }
            if generators[..i].contains(g) {
                return Err(Error::DuplicateOption);
            }
        }
        Ok(GeneratorSet { space, generators })
    }

    pub fn vacuous(space: SequenceSpace) -> Self {
        GeneratorSet {
            space,
            generators: Vec::new(),
        }
    }

    pub fn space(&self) -> &SequenceSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Gamble] {
        &self.generators
    }
}

/// An assessment on the count space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountGeneratorSet {
    space: CountSpace,
    generators: Vec<CountGamble>,
}

impl CountGeneratorSet {
    pub fn new(space: CountSpace, generators: Vec<CountGamble>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            if g.space() != &space {
                return Err(Error::SpaceMismatch(
                    space.describe(),
                    g.space().describe(),
                ));
            }
            if generators[..i].contains(g) {
                return Err(Error::DuplicateOption);
            }
        }
        Ok(CountGeneratorSet { space, generators })
    }

    pub fn space(&self) -> &CountSpace {
        &self.space
    }

    pub fn generators(&self) -> &[CountGamble] {
        &self.generators
    }

    /// The induced exchangeable assessment on sequences: one permutation
    /// invariant generator per count generator.
    pub fn lift(&self) -> Result<GeneratorSet> {
        let space = self.space.sequence_space()?;
        let mut lifted = Vec::new();
        for g in &self.generators {
            let f = counts::lift_count_gamble(g)?;
            if !lifted.contains(&f) {
                lifted.push(f);
            }
        }
        GeneratorSet::new(space, lifted)
    }
}

/// A certificate that a target is a non-negative combination of the
/// assessment's generators and point indicators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityWitness {
    /// One coefficient per generator.
    pub coefficients: Vec<Rational>,
    /// One coefficient per point indicator (coordinate slack).
    pub slack: Vec<Rational>,
}

/// Verdict of a cone-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeMembership {
    Member(FeasibilityWitness),
    /// `<c, g> >= 0` for every generator and indicator, `<c, target> < 0`.
    NotMember { separating: Vec<Rational> },
}

impl ConeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeMembership::Member(_))
    }
}

/// Verdict of a coherence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coherence {
    Coherent,
    /// `λ >= 0`, not all zero, with `Σ λ_k g_k <= 0` pointwise.
    Incoherent { lambda: Vec<Rational> },
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Coherence::Coherent)
    }
}

fn indicator_columns(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            let mut col = vec![Rational::zero(); dim];
            col[i] = int(1);
            col
        })
        .collect()
}

/// Membership in `Posi(generators ∪ {coordinate indicators})` for raw
/// vectors.  The zero target is special-cased: `0` belongs iff some
/// strictly positive combination vanishes.
fn raw_cone_member(generators: &[Vec<Rational>], target: &[Rational]) -> Result<ConeMembership> {
    let dim = target.len();
    let mut columns = generators.to_vec();
    columns.extend(indicator_columns(dim));
    let n_gen = generators.len();

    if target.iter().all(|t| t.is_zero()) {
        // 0 ∈ Posi(G) iff some nonzero λ >= 0 sums to zero; scale so one
        // coefficient is 1 and test each pivot column in turn.
        for (j, col) in columns.iter().enumerate() {
            let neg: Vec<Rational> = col.iter().map(|v| -v.clone()).collect();
            if let Feasibility::Feasible { mut coefficients } =
                lp::solve_nonneg_combination(&columns, &neg)?
            {
                coefficients[j] += int(1);
                let (gen_part, slack_part) = coefficients.split_at(n_gen);
                return Ok(ConeMembership::Member(FeasibilityWitness {
                    coefficients: gen_part.to_vec(),
                    slack: slack_part.to_vec(),
                }));
            }
        }
        // Every probe failed; 0 is not a Posi member.  There is no single
        // separating functional for the zero target, so report the zero
        // functional convention.
        return Ok(ConeMembership::NotMember {
            separating: vec![Rational::zero(); dim],
        });
    }

    match lp::solve_nonneg_combination(&columns, target)? {
        Feasibility::Feasible { coefficients } => {
            let (gen_part, slack_part) = coefficients.split_at(n_gen);
            Ok(ConeMembership::Member(FeasibilityWitness {
                coefficients: gen_part.to_vec(),
                slack: slack_part.to_vec(),
            }))
        }
        Feasibility::Infeasible { separating } => Ok(ConeMembership::NotMember { separating }),
    }
}

/// Coherence of a raw generator family: incoherent iff some non-negative,
/// not-all-zero combination of the generators is pointwise `<= 0`.
fn raw_is_coherent(generators: &[Vec<Rational>], dim: usize) -> Result<Coherence> {
    let mut columns = generators.to_vec();
    columns.extend(indicator_columns(dim));
    for (j, g) in generators.iter().enumerate() {
        if g.iter().all(|v| v.is_zero()) {
            let mut lambda = vec![Rational::zero(); generators.len()];
            lambda[j] = int(1);
            return Ok(Coherence::Incoherent { lambda });
        }
        let neg: Vec<Rational> = g.iter().map(|v| -v.clone()).collect();
        if let Feasibility::Feasible { mut coefficients } =
            lp::solve_nonneg_combination(&columns, &neg)?
        {
            coefficients[j] += int(1);
            return Ok(Coherence::Incoherent {
                lambda: coefficients[..generators.len()].to_vec(),
            });
        }
    }
    Ok(Coherence::Coherent)
}

/// `h ∈ Posi(A ∪ {1_x})`, decided exactly, with a witness either way.
pub fn cone_member(a: &GeneratorSet, h: &Gamble) -> Result<ConeMembership> {
    if h.space() != &a.space {
        return Err(Error::SpaceMismatch(
            a.space.describe(),
            h.space().describe(),
        ));
    }
    let generators: Vec<Vec<Rational>> = a
        .generators
        .iter()
        .map(|g| g.values().to_vec())
        .collect();
    raw_cone_member(&generators, h.values())
}

/// Coherence of the natural extension of `A`.
pub fn is_coherent(a: &GeneratorSet) -> Result<Coherence> {
    let generators: Vec<Vec<Rational>> = a
        .generators
        .iter()
        .map(|g| g.values().to_vec())
        .collect();
    raw_is_coherent(&generators, a.space.size())
}

/// Membership in the count-space cone `Posi(gens ∪ {count indicators})`.
pub fn count_cone_member(
    generators: &[CountGamble],
    h: &CountGamble,
) -> Result<ConeMembership> {
    let cols: Vec<Vec<Rational>> = generators.iter().map(|g| g.values().to_vec()).collect();
    raw_cone_member(&cols, h.values())
}

/// Coherence of a family of count gambles (zero members allowed; a zero
/// generator is immediately incoherent).
pub fn is_coherent_counts(space: &CountSpace, generators: &[CountGamble]) -> Result<Coherence> {
    let cols: Vec<Vec<Rational>> = generators.iter().map(|g| g.values().to_vec()).collect();
    raw_is_coherent(&cols, space.size())
}

/// The exchangeable natural extension: the count-space image of the
/// assessment together with its coherence verdict.
#[derive(Debug, Clone)]
pub struct NaturalExtension {
    pub count_space: CountSpace,
    /// `hy_map` of each generator, in assessment order (may contain the
    /// zero count gamble when a generator lies in the indifference span).
    pub generators: Vec<CountGamble>,
    pub coherence: Coherence,
}

impl NaturalExtension {
    /// The deduplicated nonzero generators as a proper assessment, when
    /// the extension is coherent.
    pub fn generator_set(&self) -> Result<CountGeneratorSet> {
        let mut gens = Vec::new();
        for g in &self.generators {
            if !g.is_zero() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        CountGeneratorSet::new(self.count_space.clone(), gens)
    }
}

pub fn exchangeable_natural_extension(a: &GeneratorSet) -> Result<NaturalExtension> {
    let count_space = CountSpace::of(&a.space);
    let generators: Vec<CountGamble> = a
        .generators
        .iter()
        .map(counts::hy_map)
        .collect::<Result<_>>()?;
    let coherence = is_coherent_counts(&count_space, &generators)?;
    Ok(NaturalExtension {
        count_space,
        generators,
        coherence,
    })
}

/// Verdict of the exchangeability decision.
#[derive(Debug, Clone)]
pub enum Exchangeability {
    Exchangeable,
    /// The extension is incoherent; `lambda` (over the assessment's
    /// count-space images) certifies it, and `failing` points at one
    /// generator that participates.
    NotExchangeable {
        failing: usize,
        lambda: Vec<Rational>,
    },
}

impl Exchangeability {
    pub fn is_exchangeable(&self) -> bool {
        matches!(self, Exchangeability::Exchangeable)
    }
}

/// Decides whether the assessment is consistent with exchangeability:
/// its count-space image must generate a coherent cone.  Rejects
/// incoherent assessments outright.
pub fn is_exchangeable(a: &GeneratorSet) -> Result<Exchangeability> {
    if !is_coherent(a)?.is_coherent() {
        return Err(Error::IncoherentAssessment);
    }
    let ext = exchangeable_natural_extension(a)?;
    match ext.coherence {
        Coherence::Coherent => Ok(Exchangeability::Exchangeable),
        Coherence::Incoherent { lambda } => {
            let failing = lambda
                .iter()
                .position(|l| !l.is_zero())
                .unwrap_or(0);
            Ok(Exchangeability::NotExchangeable { failing, lambda })
        }
    }
}

/// The count form of the representing set of desirable gambles.
pub fn represent_desirability(a: &GeneratorSet) -> Result<CountGeneratorSet> {
    if !is_exchangeable(a)?.is_exchangeable() {
        return Err(Error::NotExchangeable);
    }
    exchangeable_natural_extension(a)?.generator_set()
}

/// The polynomial form: the multinomial image of each generator, degree
/// `N` each.
pub fn represent_desirability_poly(a: &GeneratorSet) -> Result<Vec<BernsteinPoly>> {
    let counts_form = represent_desirability(a)?;
    Ok(counts_form
        .generators()
        .iter()
        .map(bernstein::comn_map)
        .collect())
}

/// Mutual containment of two natural-extension cones on the same space:
/// every generator of each lies in the other's cone.
pub fn cones_mutually_contain(a: &GeneratorSet, b: &GeneratorSet) -> Result<bool> {
    for g in a.generators() {
        if !cone_member(b, g)?.is_member() {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !cone_member(a, g)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mutual containment on the count space.
pub fn count_cones_mutually_contain(
    a: &CountGeneratorSet,
    b: &CountGeneratorSet,
) -> Result<bool> {
    for g in a.generators() {
        if !count_cone_member(b.generators(), g)?.is_member() {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !count_cone_member(a.generators(), g)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamble::{OutcomeSpace, Sequence};
    use crate::rational::ratio;

    fn ab2() -> SequenceSpace {
        SequenceSpace::new(OutcomeSpace::new(["a", "b"]).unwrap(), 2).unwrap()
    }

    fn ind(s: &SequenceSpace, entries: &[usize]) -> Gamble {
        Gamble::indicator(s.clone(), &Sequence::new(entries.to_vec())).unwrap()
    }

    /// 1_{aa} - 1/2
    fn aa_minus_half(s: &SequenceSpace) -> Gamble {
        ind(s, &[0, 0])
            .sub(&Gamble::constant(s.clone(), ratio(1, 2)))
            .unwrap()
    }

    /// 1_{ab} - 1_{ba}
    fn kernel_gen(s: &SequenceSpace) -> Gamble {
        ind(s, &[0, 1]).sub(&ind(s, &[1, 0])).unwrap()
    }

    #[test]
    fn positive_gambles_are_members_of_any_cone() {
        let s = ab2();
        let a = GeneratorSet::vacuous(s.clone());
        let h = ind(&s, &[0, 1]).add(&ind(&s, &[1, 1])).unwrap();
        assert!(cone_member(&a, &h).unwrap().is_member());
    }

    #[test]
    fn scaling_witness() {
        let s = ab2();
        let a = GeneratorSet::new(s.clone(), vec![aa_minus_half(&s)]).unwrap();
        let h = aa_minus_half(&s).scale(&ratio(2, 1));
        match cone_member(&a, &h).unwrap() {
            ConeMembership::Member(w) => {
                assert_eq!(w.coefficients, vec![ratio(2, 1)]);
                assert!(w.slack.iter().all(|x| x.is_zero()));
            }
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn separating_functional_for_reversed_kernel() {
        let s = ab2();
        let a = GeneratorSet::new(s.clone(), vec![kernel_gen(&s)]).unwrap();
        let h = kernel_gen(&s).negate();
        match cone_member(&a, &h).unwrap() {
            ConeMembership::NotMember { separating } => {
                // <c, generator> >= 0 and <c, target> < 0, checked exactly.
                let dot = |v: &Gamble| -> Rational {
                    separating
                        .iter()
                        .zip(v.values())
                        .map(|(c, x)| c * x)
                        .sum()
                };
                assert!(dot(&kernel_gen(&s)) >= ratio(0, 1));
                assert!(dot(&h) < ratio(0, 1));
            }
            other => panic!("expected not member, got {other:?}"),
        }
    }

    #[test]
    fn coherence_examples() {
        let s = ab2();
        assert!(is_coherent(&GeneratorSet::new(s.clone(), vec![aa_minus_half(&s)]).unwrap())
            .unwrap()
            .is_coherent());

        let neg = ind(&s, &[0, 0]).negate();
        match is_coherent(&GeneratorSet::new(s.clone(), vec![neg]).unwrap()).unwrap() {
            Coherence::Incoherent { lambda } => assert_eq!(lambda, vec![ratio(1, 1)]),
            other => panic!("expected incoherent, got {other:?}"),
        }

        let f = aa_minus_half(&s);
        let pair = GeneratorSet::new(s.clone(), vec![f.clone(), f.negate()]).unwrap();
        match is_coherent(&pair).unwrap() {
            Coherence::Incoherent { lambda } => {
                assert!(lambda.iter().any(|l| !l.is_zero()));
                // The certificate combination is pointwise <= 0.
                let mut acc = Gamble::zero(s.clone());
                for (l, g) in lambda.iter().zip(pair.generators()) {
                    acc = acc.add(&g.scale(l)).unwrap();
                }
                assert!(acc.leq(&Gamble::zero(s.clone())).unwrap());
            }
            other => panic!("expected incoherent, got {other:?}"),
        }
    }

    #[test]
    fn vacuous_assessment_is_coherent() {
        let s = ab2();
        assert!(is_coherent(&GeneratorSet::vacuous(s)).unwrap().is_coherent());
    }

    #[test]
    fn exchangeability_of_invariant_assessment() {
        let s = ab2();
        let invariant = ind(&s, &[0, 1])
            .add(&ind(&s, &[1, 0]))
            .unwrap()
            .sub(&Gamble::constant(s.clone(), ratio(1, 2)))
            .unwrap();
        let a = GeneratorSet::new(s, vec![invariant]).unwrap();
        assert!(is_exchangeable(&a).unwrap().is_exchangeable());
    }

    #[test]
    fn kernel_assessment_is_not_exchangeable() {
        let s = ab2();
        let a = GeneratorSet::new(s.clone(), vec![kernel_gen(&s)]).unwrap();
        match is_exchangeable(&a).unwrap() {
            Exchangeability::NotExchangeable { failing, .. } => assert_eq!(failing, 0),
            other => panic!("expected not exchangeable, got {other:?}"),
        }
    }

    #[test]
    fn incoherent_input_rejected_by_exchangeability() {
        let s = ab2();
        let a = GeneratorSet::new(s.clone(), vec![ind(&s, &[0, 0]).negate()]).unwrap();
        assert!(matches!(
            is_exchangeable(&a),
            Err(Error::IncoherentAssessment)
        ));
    }

    #[test]
    fn natural_extension_values() {
        let s = ab2();
        let invariant = ind(&s, &[0, 1])
            .add(&ind(&s, &[1, 0]))
            .unwrap()
            .sub(&Gamble::constant(s.clone(), ratio(1, 2)))
            .unwrap();
        let a = GeneratorSet::new(s.clone(), vec![invariant]).unwrap();
        let ext = exchangeable_natural_extension(&a).unwrap();
        assert_eq!(
            ext.generators[0].values(),
            &[ratio(-1, 2), ratio(1, 2), ratio(-1, 2)]
        );
        assert!(ext.coherence.is_coherent());

        let kernel = GeneratorSet::new(s.clone(), vec![kernel_gen(&s)]).unwrap();
        let ext = exchangeable_natural_extension(&kernel).unwrap();
        assert!(ext.generators[0].is_zero());
        assert!(!ext.coherence.is_coherent());

        let vac = exchangeable_natural_extension(&GeneratorSet::vacuous(s)).unwrap();
        assert!(vac.generators.is_empty());
        assert!(vac.coherence.is_coherent());
    }

    #[test]
    fn representation_forms() {
        let s = ab2();
        let invariant = ind(&s, &[0, 1])
            .add(&ind(&s, &[1, 0]))
            .unwrap()
            .sub(&Gamble::constant(s.clone(), ratio(1, 2)))
            .unwrap();
        let a = GeneratorSet::new(s.clone(), vec![invariant]).unwrap();
        let count_form = represent_desirability(&a).unwrap();
        assert_eq!(count_form.generators().len(), 1);
        let poly_form = represent_desirability_poly(&a).unwrap();
        // 2 theta_a theta_b - 1/2 in Bernstein coordinates at degree 2.
        assert_eq!(
            poly_form[0].coefficients(),
            &[ratio(-1, 2), ratio(1, 2), ratio(-1, 2)]
        );

        let vac = GeneratorSet::vacuous(s.clone());
        assert!(represent_desirability(&vac).unwrap().generators().is_empty());

        let kernel = GeneratorSet::new(s.clone(), vec![kernel_gen(&s)]).unwrap();
        assert!(matches!(
            represent_desirability(&kernel),
            Err(Error::NotExchangeable)
        ));
    }

    #[test]
    fn lifted_models_are_exchangeable() {
        let s = ab2();
        let cs = CountSpace::of(&s);
        let g = CountGamble::new(
            cs.clone(),
            vec![ratio(-1, 3), ratio(1, 1), ratio(-1, 2)],
        )
        .unwrap();
        let lifted = CountGeneratorSet::new(cs, vec![g]).unwrap().lift().unwrap();
        assert!(is_exchangeable(&lifted).unwrap().is_exchangeable());
    }

    #[test]
    fn monotonicity_of_membership() {
        let s = ab2();
        let a = GeneratorSet::new(s.clone(), vec![aa_minus_half(&s)]).unwrap();
        let h = aa_minus_half(&s).scale(&ratio(3, 1));
        assert!(cone_member(&a, &h).unwrap().is_member());
        let bigger = GeneratorSet::new(
            s.clone(),
            vec![aa_minus_half(&s), ind(&s, &[1, 1])],
        )
        .unwrap();
        assert!(cone_member(&bigger, &h).unwrap().is_member());
    }

    #[test]
    fn zero_target_membership() {
        let s = ab2();
        let f = kernel_gen(&s);
        let pair = GeneratorSet::new(s.clone(), vec![f.clone(), f.negate()]).unwrap();
        let zero = Gamble::zero(s.clone());
        assert!(cone_member(&pair, &zero).unwrap().is_member());
        let single = GeneratorSet::new(s, vec![f]).unwrap();
        assert!(!cone_member(&single, &zero).unwrap().is_member());
    }
}
