//! The countable-sequence layer over a finite horizon: gambles of finite
//! structure, cylindrical extension and marginalization, countable
//! exchangeability, per-degree Bernstein coherence, and the union form of
//! the representing objects.

use std::sync::Arc;

use crate::bernstein::{self, BernsteinPoly};
use crate::choice::{self, ChoiceTable, Entry, OptionPool};
use crate::desirability::{self, GeneratorSet};
use crate::gamble::{Gamble, OutcomeSpace, SequenceSpace};
use crate::rational::{int, ratio, Rational};
use crate::{Error, Result};

/// Default finite horizon for "for every degree" statements.
pub const DEFAULT_HORIZON: usize = 4;

/// The horizon bounding every per-degree quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Horizon {
    m: usize,
}

impl Horizon {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadInput("horizon must be positive".into()));
        }
        Ok(Horizon { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon { m: DEFAULT_HORIZON }
    }
}

/// A gamble on arbitrarily long sequences that depends on finitely many
/// coordinates, stored in canonical form: the table's length is the
/// smallest degree expressing it (constants carry degree 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructureGamble {
    table: Gamble,
}

impl FiniteStructureGamble {
    /// Canonicalizes: reduces the table to its minimal degree.
    pub fn new(table: Gamble) -> Result<Self> {
        Ok(FiniteStructureGamble {
            table: reduce_to_minimal_degree(&table)?,
        })
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        self.table.space().base()
    }

    pub fn degree(&self) -> usize {
        self.table.space().length()
    }

    pub fn table(&self) -> &Gamble {
        &self.table
    }
}

/// Smallest `k >= 1` such that the values depend only on the first `k`
/// coordinates, together with the degree-`k` table.
fn reduce_to_minimal_degree(g: &Gamble) -> Result<Gamble> {
    let space = g.space();
    let n = space.length();
    let base_size = space.base().size();
    for k in 1..n {
        // Blocks of size |X|^(n-k) share a length-k prefix; the gamble has
        // degree <= k iff each block is constant.
        let block = base_size.pow((n - k) as u32);
        let constant_blocks = g
            .values()
            .chunks(block)
            .all(|chunk| chunk.iter().all(|v| v == &chunk[0]));
        if constant_blocks {
            let reduced_space = SequenceSpace::new(space.base().clone(), k)?;
            let values: Vec<Rational> = g
                .values()
                .iter()
                .step_by(block)
                .cloned()
                .collect();
            return Gamble::new(reduced_space, values);
        }
    }
    Ok(g.clone())
}

/// The value-preserving re-expression on longer sequences: the extension
/// ignores coordinates beyond the gamble's degree.
pub fn cylindrical_extend(f: &FiniteStructureGamble, n: usize) -> Result<Gamble> {
    let d = f.degree();
    if n < d {
        return Err(Error::ExtensionTooShort { degree: d, target: n });
    }
    if n == d {
        return Ok(f.table.clone());
    }
    let space = SequenceSpace::new(f.base().clone(), n)?;
    let block = f.base().size().pow((n - d) as u32);
    let mut values = Vec::with_capacity(space.size());
    for v in f.table.values() {
        values.extend(std::iter::repeat(v.clone()).take(block));
    }
    Gamble::new(space, values)
}

/// Canonicalizes an ordinary gamble into its finite-structure form.
pub fn canonical_degree(g: &Gamble) -> Result<FiniteStructureGamble> {
    FiniteStructureGamble::new(g.clone())
}

/// A choice table whose pool consists of gambles of finite structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountableChoiceTable {
    base: Arc<OutcomeSpace>,
    pool: Vec<FiniteStructureGamble>,
    entries: Vec<Entry>,
}

impl CountableChoiceTable {
    pub fn new(
        base: Arc<OutcomeSpace>,
        pool: Vec<FiniteStructureGamble>,
        entries: Vec<Entry>,
    ) -> Result<Self> {
        for (i, f) in pool.iter().enumerate() {
            if f.base() != &base {
                return Err(Error::SpaceMismatch(
                    format!("{{{}}}", base.labels().join(",")),
                    format!("{{{}}}", f.base().labels().join(",")),
                ));
            }
            if pool[..i].contains(f) {
                return Err(Error::DuplicateOption);
            }
        }
        for (i, e) in entries.iter().enumerate() {
            if e.options.is_empty() {
                return Err(Error::EmptyOptionSet);
            }
            for &idx in e.options.iter().chain(e.chosen.iter()) {
                if idx >= pool.len() {
                    return Err(Error::BadOptionIndex(idx));
                }
            }
            if !e.chosen.is_subset(&e.options) {
                return Err(Error::ChosenNotSubset(i));
            }
        }
        Ok(CountableChoiceTable {
            base,
            pool,
            entries,
        })
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        &self.base
    }

    pub fn pool(&self) -> &[FiniteStructureGamble] {
        &self.pool
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn max_degree(&self) -> usize {
        self.pool.iter().map(|f| f.degree()).max().unwrap_or(1)
    }
}

/// The degree-`n` marginal: keeps the entries whose every option has
/// degree at most `n`, re-expressed on `X^n`.
pub fn marginalize_choice(t: &CountableChoiceTable, n: usize) -> Result<ChoiceTable> {
    let space = SequenceSpace::new(t.base.clone(), n)?;
    // Sub-pool of low-degree options, with an index remap.
    let mut remap: Vec<Option<usize>> = vec![None; t.pool.len()];
    let mut options = Vec::new();
    for (i, f) in t.pool.iter().enumerate() {
        if f.degree() <= n {
            remap[i] = Some(options.len());
            options.push(cylindrical_extend(f, n)?);
        }
    }
    if options.is_empty() {
        // No expressible options at this degree; an empty-domain table
        // needs a non-empty pool, so park the zero gamble in it.
        let pool = OptionPool::new(space.clone(), vec![Gamble::zero(space)])?;
        return ChoiceTable::new(pool, Vec::new());
    }
    let pool = OptionPool::new(space, options)?;
    let entries = t
        .entries
        .iter()
        .filter(|e| e.options.iter().all(|&i| remap[i].is_some()))
        .map(|e| Entry {
            options: e.options.iter().map(|&i| remap[i].unwrap()).collect(),
            chosen: e.chosen.iter().map(|&i| remap[i].unwrap()).collect(),
        })
        .collect();
    ChoiceTable::new(pool, entries)
}

/// Verdict at one degree of a per-degree check.
#[derive(Debug, Clone)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub passed: bool,
    pub detail: String,
}

/// Aggregated per-degree report; `passed` iff every degree up to the
/// horizon passed.  The horizon bound is part of the claim.
#[derive(Debug, Clone)]
pub struct HorizonReport {
    pub horizon: usize,
    pub degrees: Vec<DegreeVerdict>,
}

impl HorizonReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.passed)
    }

    pub fn first_failure(&self) -> Option<&DegreeVerdict> {
        self.degrees.iter().find(|d| !d.passed)
    }
}

fn check_degrees_in_horizon(max_degree: usize, horizon: Horizon) -> Result<()> {
    if max_degree > horizon.m() {
        return Err(Error::DegreeAboveHorizon {
            degree: max_degree,
            horizon: horizon.m(),
        });
    }
    Ok(())
}

/// Countable exchangeability of a choice table: every marginal up to the
/// horizon must treat exchangeably-indifferent options alike.
pub fn check_countable_exchangeable_choice(
    t: &CountableChoiceTable,
    horizon: Horizon,
) -> Result<HorizonReport> {
    check_degrees_in_horizon(t.max_degree(), horizon)?;
    let mut degrees = Vec::new();
    for n in 1..=horizon.m() {
        let marginal = marginalize_choice(t, n)?;
        let report = choice::check_indifference_compatibility(&marginal)?;
        degrees.push(DegreeVerdict {
            degree: n,
            passed: report.passed(),
            detail: if report.passed() {
                format!("marginal at degree {n} compatible")
            } else {
                format!(
                    "marginal at degree {n}: {}",
                    report.violations[0].instance
                )
            },
        });
    }
    Ok(HorizonReport {
        horizon: horizon.m(),
        degrees,
    })
}

/// The degree-`n` marginal assessment: generators of degree at most `n`,
/// re-expressed on `X^n`.
pub fn marginal_assessment(
    base: &Arc<OutcomeSpace>,
    generators: &[FiniteStructureGamble],
    n: usize,
) -> Result<GeneratorSet> {
    let space = SequenceSpace::new(base.clone(), n)?;
    let mut gens = Vec::new();
    for f in generators {
        if f.degree() <= n {
            let g = cylindrical_extend(f, n)?;
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    GeneratorSet::new(space, gens)
}

/// Countable exchangeability of a desirability assessment: every marginal
/// assessment up to the horizon must be exchangeable.
pub fn check_countable_exchangeable_desirability(
    base: &Arc<OutcomeSpace>,
    generators: &[FiniteStructureGamble],
    horizon: Horizon,
) -> Result<HorizonReport> {
    let max_degree = generators.iter().map(|f| f.degree()).max().unwrap_or(1);
    check_degrees_in_horizon(max_degree, horizon)?;
    let mut degrees = Vec::new();
    for n in 1..=horizon.m() {
        let a = marginal_assessment(base, generators, n)?;
        let verdict = if a.generators().is_empty() {
            // Vacuous marginal: nothing asserted yet at this degree.
            true
        } else {
            desirability::is_exchangeable(&a)?.is_exchangeable()
        };
        degrees.push(DegreeVerdict {
            degree: n,
            passed: verdict,
            detail: format!(
                "marginal assessment at degree {n} {}",
                if verdict { "exchangeable" } else { "not exchangeable" }
            ),
        });
    }
    Ok(HorizonReport {
        horizon: horizon.m(),
        degrees,
    })
}

/// A choice table whose pool consists of Bernstein polynomials of possibly
/// different degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinChoiceTable {
    base: Arc<OutcomeSpace>,
    pool: Vec<BernsteinPoly>,
    entries: Vec<Entry>,
}

impl BernsteinChoiceTable {
    pub fn new(
        base: Arc<OutcomeSpace>,
        pool: Vec<BernsteinPoly>,
        entries: Vec<Entry>,
    ) -> Result<Self> {
        for (i, p) in pool.iter().enumerate() {
            if p.base() != &base {
                return Err(Error::SpaceMismatch(
                    format!("{{{}}}", base.labels().join(",")),
                    format!("{{{}}}", p.base().labels().join(",")),
                ));
            }
            for q in &pool[..i] {
                if polys_equal(p, q)? {
                    return Err(Error::DuplicateOption);
                }
            }
        }
        for (i, e) in entries.iter().enumerate() {
            if e.options.is_empty() {
                return Err(Error::EmptyOptionSet);
            }
            for &idx in e.options.iter().chain(e.chosen.iter()) {
                if idx >= pool.len() {
                    return Err(Error::BadOptionIndex(idx));
                }
            }
            if !e.chosen.is_subset(&e.options) {
                return Err(Error::ChosenNotSubset(i));
            }
        }
        Ok(BernsteinChoiceTable {
            base,
            pool,
            entries,
        })
    }

    pub fn pool(&self) -> &[BernsteinPoly] {
        &self.pool
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }
}

/// Equality as polynomials: elevate to the common degree and compare.
pub fn polys_equal(p: &BernsteinPoly, q: &BernsteinPoly) -> Result<bool> {
    let n = p.degree().max(q.degree());
    Ok(bernstein::degree_elevate(p, n)? == bernstein::degree_elevate(q, n)?)
}

fn find_poly(pool: &[BernsteinPoly], p: &BernsteinPoly) -> Result<Option<usize>> {
    for (i, q) in pool.iter().enumerate() {
        if polys_equal(p, q)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Per-degree coherence of a Bernstein choice table: at each degree
/// `n <= M`, restrict to the entries whose options live in the degree-`n`
/// space and check the choice axioms under the degree-`n` cone order.
pub fn per_degree_coherence(
    t: &BernsteinChoiceTable,
    horizon: Horizon,
) -> Result<HorizonReport> {
    let scalars = [ratio(1, 2), int(1), int(2)];
    let mut degrees = Vec::new();
    for n in 1..=horizon.m() {
        let report = coherence_at_degree(t, n, &scalars)?;
        degrees.push(DegreeVerdict {
            degree: n,
            passed: report.passed(),
            detail: if report.passed() {
                format!("degree-{n} restriction coherent")
            } else {
                format!("degree {n}: {} {}", report.violations[0].axiom, report.violations[0].instance)
            },
        });
    }
    Ok(HorizonReport {
        horizon: horizon.m(),
        degrees,
    })
}

/// The choice axioms on the degree-`n` restriction, with dominance taken
/// in the degree-`n` Bernstein cone order.
fn coherence_at_degree(
    t: &BernsteinChoiceTable,
    n: usize,
    scalars: &[Rational],
) -> Result<choice::AxiomReport> {
    // Restrict the pool to options expressible at degree n, normalized by
    // elevation to exactly degree n; then the finite choice machinery
    // applies with gambles replaced by coefficient vectors.  We reuse the
    // sequence-space checker by mapping coefficients onto an auxiliary
    // space of the same dimension: the degree-n Bernstein cone order is
    // the componentwise order of degree-n coefficients.
    let coeff_space = crate::counts::CountSpace::new(t.base.clone(), n);
    let dim = coeff_space.size();
    // An auxiliary one-letter-per-coordinate space with |X'| = dim, N = 1.
    let labels: Vec<String> = (0..dim).map(|i| format!("c{i}")).collect();
    let aux_base = OutcomeSpace::new(labels)?;
    let aux_space = SequenceSpace::new(aux_base, 1)?;

    let mut remap: Vec<Option<usize>> = vec![None; t.pool.len()];
    let mut options = Vec::new();
    for (i, p) in t.pool.iter().enumerate() {
        if p.degree() <= n {
            let elevated = bernstein::degree_elevate(p, n)?;
            remap[i] = Some(options.len());
            options.push(Gamble::new(
                aux_space.clone(),
                elevated.coefficients().to_vec(),
            )?);
        }
    }
    if options.is_empty() {
        return Ok(choice::AxiomReport::default());
    }
    let pool = OptionPool::new(aux_space, options)?;
    let entries: Vec<Entry> = t
        .entries
        .iter()
        .filter(|e| e.options.iter().all(|&i| remap[i].is_some()))
        .map(|e| Entry {
            options: e.options.iter().map(|&i| remap[i].unwrap()).collect(),
            chosen: e.chosen.iter().map(|&i| remap[i].unwrap()).collect(),
        })
        .collect();
    let table = ChoiceTable::new(pool, entries)?;
    choice::check_coherence_axioms(&table, scalars)
}

/// A finite union of representing Bernstein polynomials, possibly of
/// different degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySet {
    pub generators: Vec<BernsteinPoly>,
}

/// The desirability half of the horizon-bounded representation: the union
/// over degrees of the polynomial images of the marginal assessments, with
/// cross-degree elevation consistency enforced.
pub fn countable_represent_desirability(
    base: &Arc<OutcomeSpace>,
    generators: &[FiniteStructureGamble],
    horizon: Horizon,
) -> Result<PolySet> {
    let report = check_countable_exchangeable_desirability(base, generators, horizon)?;
    if report.first_failure().is_some() {
        return Err(Error::NotExchangeable);
    }
    let mut out: Vec<BernsteinPoly> = Vec::new();
    for n in 1..=horizon.m() {
        let a = marginal_assessment(base, generators, n)?;
        if a.generators().is_empty() {
            continue;
        }
        for p in desirability::represent_desirability_poly(&a)? {
            // Cross-degree consistency: a lower-degree image of the same
            // generator must elevate to this one exactly.
            let mut duplicate = false;
            for q in &out {
                if polys_equal(&p, q)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                out.push(p);
            }
        }
    }
    Ok(PolySet { generators: out })
}

/// The choice half: one representing table per degree, assembled into a
/// single table with elevation-normalized keys; disagreeing duplicates
/// across degrees are a representation inconsistency.
pub fn countable_represent_choice(
    t: &CountableChoiceTable,
    horizon: Horizon,
) -> Result<Vec<(Vec<BernsteinPoly>, Vec<BernsteinPoly>)>> {
    let report = check_countable_exchangeable_choice(t, horizon)?;
    if report.first_failure().is_some() {
        return Err(Error::NotExchangeable);
    }
    let mut assembled: Vec<(Vec<BernsteinPoly>, Vec<BernsteinPoly>)> = Vec::new();
    for n in 1..=horizon.m() {
        let marginal = marginalize_choice(t, n)?;
        if marginal.entries().is_empty() {
            continue; // the empty option set represents nothing
        }
        let rep = choice::represent_choice_poly(&marginal)?;
        for (key, value) in rep.entries() {
            let key: Vec<BernsteinPoly> = key.iter().cloned().collect();
            let value: Vec<BernsteinPoly> = value.iter().cloned().collect();
            match find_assembled_key(&assembled, &key)? {
                Some(i) => {
                    if !poly_sets_equal(&assembled[i].1, &value)? {
                        return Err(Error::RepresentationConflict(format!(
                            "degree-{n} representing entry disagrees with a lower degree"
                        )));
                    }
                }
                None => assembled.push((key, value)),
            }
        }
    }
    Ok(assembled)
}

fn poly_sets_equal(a: &[BernsteinPoly], b: &[BernsteinPoly]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for p in a {
        if find_poly(b, p)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn find_assembled_key(
    assembled: &[(Vec<BernsteinPoly>, Vec<BernsteinPoly>)],
    key: &[BernsteinPoly],
) -> Result<Option<usize>> {
    for (i, (k, _)) in assembled.iter().enumerate() {
        if poly_sets_equal(k, key)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    use crate::gamble::Sequence;
    use crate::rational::ratio;

    fn ab() -> Arc<OutcomeSpace> {
        OutcomeSpace::new(["a", "b"]).unwrap()
    }

    fn space(base: &Arc<OutcomeSpace>, n: usize) -> SequenceSpace {
        SequenceSpace::new(base.clone(), n).unwrap()
    }

    fn ind(s: &SequenceSpace, entries: &[usize]) -> Gamble {
        Gamble::indicator(s.clone(), &Sequence::new(entries.to_vec())).unwrap()
    }

    /// Degree-1 gamble (a: 1, b: 0).
    fn deg1(base: &Arc<OutcomeSpace>) -> FiniteStructureGamble {
        let s1 = space(base, 1);
        FiniteStructureGamble::new(Gamble::new(s1, vec![ratio(1, 1), ratio(0, 1)]).unwrap())
            .unwrap()
    }

    #[test]
    fn extension_examples() {
        let base = ab();
        let f = deg1(&base);
        let g = cylindrical_extend(&f, 2).unwrap();
        // (aa, ab, ba, bb) -> (1, 1, 0, 0)
        assert_eq!(
            g.values(),
            &[ratio(1, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1)]
        );
        assert_eq!(cylindrical_extend(&f, 1).unwrap(), *f.table());
        // Functoriality 1 -> 2 -> 3 equals 1 -> 3.
        let via2 = FiniteStructureGamble::new(cylindrical_extend(&f, 2).unwrap()).unwrap();
        assert_eq!(
            cylindrical_extend(&via2, 3).unwrap(),
            cylindrical_extend(&f, 3).unwrap()
        );
        assert!(matches!(
            cylindrical_extend(&via2, 0),
            Err(Error::ExtensionTooShort { .. })
        ));
    }

    #[test]
    fn canonicalization() {
        let base = ab();
        // Constants reduce to degree 1.
        let c = Gamble::constant(space(&base, 3), ratio(5, 7));
        let f = canonical_degree(&c).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.table().values(), &[ratio(5, 7), ratio(5, 7)]);
        // The degree-1 extension reduces back.
        let ext = cylindrical_extend(&deg1(&base), 3).unwrap();
        assert_eq!(canonical_degree(&ext).unwrap(), deg1(&base));
        // A genuinely two-coordinate gamble stays at degree 2.
        let g = ind(&space(&base, 2), &[0, 1]);
        assert_eq!(canonical_degree(&g).unwrap().degree(), 2);
    }

    fn set(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    /// Pool {0 (degree 1), b = 1_{ab} - 1_{ba} (degree 2)}.
    fn mixed_table(chosen_pair: &[usize]) -> CountableChoiceTable {
        let base = ab();
        let zero = FiniteStructureGamble::new(Gamble::zero(space(&base, 1))).unwrap();
        let s2 = space(&base, 2);
        let b =
            FiniteStructureGamble::new(ind(&s2, &[0, 1]).sub(&ind(&s2, &[1, 0])).unwrap())
                .unwrap();
        CountableChoiceTable::new(
            base,
            vec![zero, b],
            vec![Entry {
                options: set(&[0, 1]),
                chosen: set(chosen_pair),
            }],
        )
        .unwrap()
    }

    #[test]
    fn marginalization() {
        let t = mixed_table(&[0, 1]);
        // At degree 1 only the zero option survives; the pair entry drops.
        let m1 = marginalize_choice(&t, 1).unwrap();
        assert!(m1.entries().is_empty());
        // At degree 2 the whole table is expressible.
        let m2 = marginalize_choice(&t, 2).unwrap();
        assert_eq!(m2.entries().len(), 1);
        assert_eq!(m2.pool().options().len(), 2);
        assert_eq!(m2.entries()[0].chosen, set(&[0, 1]));
    }

    #[test]
    fn countable_exchangeability_choice() {
        let symmetric = mixed_table(&[0, 1]);
        let report =
            check_countable_exchangeable_choice(&symmetric, Horizon::new(3).unwrap()).unwrap();
        assert!(report.passed());

        let asymmetric = mixed_table(&[1]);
        let report =
            check_countable_exchangeable_choice(&asymmetric, Horizon::new(3).unwrap()).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().degree, 2);
    }

    #[test]
    fn degree_above_horizon_rejected() {
        let t = mixed_table(&[0, 1]);
        assert!(matches!(
            check_countable_exchangeable_choice(&t, Horizon::new(1).unwrap()),
            Err(Error::DegreeAboveHorizon {
                degree: 2,
                horizon: 1
            })
        ));
    }

    /// The invariant degree-2 generator 1_{ab} + 1_{ba} - 1/2.
    fn invariant_gen(base: &Arc<OutcomeSpace>) -> FiniteStructureGamble {
        let s2 = space(base, 2);
        FiniteStructureGamble::new(
            ind(&s2, &[0, 1])
                .add(&ind(&s2, &[1, 0]))
                .unwrap()
                .sub(&Gamble::constant(s2.clone(), ratio(1, 2)))
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn countable_exchangeability_desirability() {
        let base = ab();
        let gens = vec![invariant_gen(&base)];
        let report = check_countable_exchangeable_desirability(
            &base,
            &gens,
            Horizon::new(3).unwrap(),
        )
        .unwrap();
        assert!(report.passed());

        let s2 = space(&base, 2);
        let kernel = FiniteStructureGamble::new(
            ind(&s2, &[0, 1]).sub(&ind(&s2, &[1, 0])).unwrap(),
        )
        .unwrap();
        let report = check_countable_exchangeable_desirability(
            &base,
            &[kernel],
            Horizon::new(3).unwrap(),
        )
        .unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().degree, 2);
    }

    #[test]
    fn empty_assessment_represents_empty() {
        let base = ab();
        let out =
            countable_represent_desirability(&base, &[], Horizon::new(3).unwrap()).unwrap();
        assert!(out.generators.is_empty());
    }

    #[test]
    fn union_representation_dedupes_across_degrees() {
        let base = ab();
        let gens = vec![invariant_gen(&base)];
        let out =
            countable_represent_desirability(&base, &gens, Horizon::new(3).unwrap()).unwrap();
        // The degree-2 image and its degree-3 re-expression agree after
        // elevation, so only one representative survives.
        assert_eq!(out.generators.len(), 1);
        assert_eq!(
            out.generators[0].coefficients(),
            &[ratio(-1, 2), ratio(1, 2), ratio(-1, 2)]
        );
    }

    #[test]
    fn single_degree_matches_finite_path() {
        let base = ab();
        let gens = vec![invariant_gen(&base)];
        let countable =
            countable_represent_desirability(&base, &gens, Horizon::new(2).unwrap()).unwrap();
        let finite = desirability::represent_desirability_poly(
            &marginal_assessment(&base, &gens, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(countable.generators, finite);
    }

    #[test]
    fn choice_representation_single_degree() {
        let t = mixed_table(&[0, 1]);
        let horizon = Horizon::new(2).unwrap();
        let assembled = countable_represent_choice(&t, horizon).unwrap();
        let finite =
            choice::represent_choice_poly(&marginalize_choice(&t, 2).unwrap()).unwrap();
        assert_eq!(assembled.len(), finite.entries().len());
        for (key, value) in &assembled {
            // b and 0 collapse to the same polynomial, so keys are singletons.
            assert_eq!(key.len(), 1);
            assert_eq!(value.len(), 1);
        }
    }

    #[test]
    fn choice_representation_requires_exchangeability() {
        let t = mixed_table(&[1]);
        assert!(matches!(
            countable_represent_choice(&t, Horizon::new(2).unwrap()),
            Err(Error::NotExchangeable)
        ));
    }

    #[test]
    fn per_degree_coherence_examples() {
        let base = ab();
        // Pool {0, B_{(1,1)}} at degree 2; choosing only the dominant
        // option passes, choosing only 0 fails C2 at degree 2.
        let zero = BernsteinPoly::constant(base.clone(), 1, ratio(0, 1));
        let b11 = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        )
        .unwrap();
        let good = BernsteinChoiceTable::new(
            base.clone(),
            vec![zero.clone(), b11.clone()],
            vec![Entry {
                options: set(&[0, 1]),
                chosen: set(&[1]),
            }],
        )
        .unwrap();
        let report = per_degree_coherence(&good, Horizon::new(3).unwrap()).unwrap();
        assert!(report.passed());

        let bad = BernsteinChoiceTable::new(
            base.clone(),
            vec![zero, b11],
            vec![Entry {
                options: set(&[0, 1]),
                chosen: set(&[0]),
            }],
        )
        .unwrap();
        let report = per_degree_coherence(&bad, Horizon::new(3).unwrap()).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().degree, 2);
    }

    #[test]
    fn per_degree_coherence_empty_table() {
        let base = ab();
        let t = BernsteinChoiceTable::new(
            base,
            vec![BernsteinPoly::constant(ab(), 1, ratio(0, 1))],
            vec![],
        )
        .unwrap();
        assert!(per_degree_coherence(&t, Horizon::default()).unwrap().passed());
    }

    #[test]
    fn kernel_sum_closure_across_degrees() {
        // b1 in the degree-2 kernel, extended to degree 3, plus b2 in the
        // degree-3 kernel: the sum symmetrizes to zero at degree 3.
        let base = ab();
        let s2 = space(&base, 2);
        let b1 = FiniteStructureGamble::new(
            ind(&s2, &[0, 1]).sub(&ind(&s2, &[1, 0])).unwrap(),
        )
        .unwrap();
        let s3 = space(&base, 3);
        let b2 = ind(&s3, &[0, 0, 1]).sub(&ind(&s3, &[0, 1, 0])).unwrap();
        let sum = cylindrical_extend(&b1, 3).unwrap().add(&b2).unwrap();
        assert!(crate::counts::ex_via_atoms(&sum).unwrap().is_zero());
    }
}
