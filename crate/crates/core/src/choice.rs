//! Finite-domain choice tables: the rationality axioms checked
//! instance-wise, extraction of the pairwise desirability model,
//! indifference compatibility, and the choice-function halves of the
//! representation theorems.

use std::collections::BTreeSet;

use crate::bernstein::{self, BernsteinPoly};
use crate::counts::{self, CountGamble};
use crate::desirability::GeneratorSet;
use crate::gamble::{Gamble, SequenceSpace};
use crate::rational::Rational;
use crate::{Error, Result};

/// The finite universe of options a table is defined over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionPool {
    space: SequenceSpace,
    options: Vec<Gamble>,
}

impl OptionPool {
    pub fn new(space: SequenceSpace, options: Vec<Gamble>) -> Result<Self> {
        for (i, g) in options.iter().enumerate() {
            if g.space() != &space {
                return Err(Error::SpaceMismatch(
                    space.describe(),
                    g.space().describe(),
                ));
            }
            if options[..i].contains(g) {
                return Err(Error::DuplicateOption);
            }
        }
        Ok(OptionPool { space, options })
    }

    pub fn space(&self) -> &SequenceSpace {
        &self.space
    }

    pub fn options(&self) -> &[Gamble] {
        &self.options
    }

    pub fn index_of(&self, g: &Gamble) -> Option<usize> {
        self.options.iter().position(|o| o == g)
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.options.iter().position(|o| o.is_zero())
    }
}

/// One domain entry: an option set and its chosen subset, both as pool
/// index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub options: BTreeSet<usize>,
    pub chosen: BTreeSet<usize>,
}

/// An explicit finite-domain choice function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceTable {
    pool: OptionPool,
    entries: Vec<Entry>,
}

impl ChoiceTable {
    pub fn new(pool: OptionPool, entries: Vec<Entry>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.options.is_empty() {
                return Err(Error::EmptyOptionSet);
            }
            for &idx in e.options.iter().chain(e.chosen.iter()) {
                if idx >= pool.options.len() {
                    return Err(Error::BadOptionIndex(idx));
                }
            }
            if !e.chosen.is_subset(&e.options) {
                return Err(Error::ChosenNotSubset(i));
            }
            if entries[..i].iter().any(|p| p.options == e.options) {
                return Err(Error::BadInput(format!(
                    "duplicate domain entry at position {i}"
                )));
            }
        }
        Ok(ChoiceTable { pool, entries })
    }

    pub fn pool(&self) -> &OptionPool {
        &self.pool
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn lookup(&self, options: &BTreeSet<usize>) -> Option<&Entry> {
        self.entries.iter().find(|e| &e.options == options)
    }
}

/// Which axiom an instance violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    C1,
    C2,
    C3a,
    C3b,
    C4a,
    C4b,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3a => "C3a",
            Axiom::C3b => "C3b",
            Axiom::C4a => "C4a",
            Axiom::C4b => "C4b",
        };
        f.write_str(s)
    }
}

/// One violated axiom instance, with a human-readable description of the
/// participating option sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub instance: String,
}

/// Report of an instance-wise axiom check; empty `violations` means every
/// evaluable instance passed.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: Axiom, instance: String) {
        self.violations.push(Violation { axiom, instance });
    }

    fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }
}

fn set_label(set: &BTreeSet<usize>) -> String {
    format!(
        "{{{}}}",
        set.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Maps a list of gambles to pool indices; `None` if any is outside the
/// pool.
fn pool_image(pool: &OptionPool, gambles: &[Gamble]) -> Option<BTreeSet<usize>> {
    gambles.iter().map(|g| pool.index_of(g)).collect()
}

/// Evaluates every axiom instance whose participating option sets all lie
/// in the table's domain.
pub fn check_coherence_axioms(table: &ChoiceTable, scalars: &[Rational]) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let pool = table.pool();
    let entries = table.entries();

    // C1: no empty choice.
    for e in entries {
        if e.chosen.is_empty() {
            report.push(Axiom::C1, format!("C({}) is empty", set_label(&e.options)));
        }
    }

    // C2: strict dominance forces the dominant option in pairs.
    for (u, gu) in pool.options().iter().enumerate() {
        for (v, gv) in pool.options().iter().enumerate() {
            if u == v || !gu.strictly_below(gv)? {
                continue;
            }
            let pair: BTreeSet<usize> = [u, v].into_iter().collect();
            if let Some(e) = table.lookup(&pair) {
                let want: BTreeSet<usize> = [v].into_iter().collect();
                if e.chosen != want {
                    report.push(
                        Axiom::C2,
                        format!("option {u} < option {v} but C({}) != {{{v}}}", set_label(&pair)),
                    );
                }
            }
        }
    }

    // C3a: if C(O2) ⊆ O2 \ O1 and O1 ⊆ O2 ⊆ O then C(O) ⊆ O \ O1.
    for e1 in entries {
        for e2 in entries {
            if !e1.options.is_subset(&e2.options) {
                continue;
            }
            if !e2.chosen.is_disjoint(&e1.options) {
                continue;
            }
            for e in entries {
                if !e2.options.is_subset(&e.options) {
                    continue;
                }
                if !e.chosen.is_disjoint(&e1.options) {
                    report.push(
                        Axiom::C3a,
                        format!(
                            "O1={} O2={} O={}",
                            set_label(&e1.options),
                            set_label(&e2.options),
                            set_label(&e.options)
                        ),
                    );
                }
            }
        }
    }

    // C3b: if C(O2) ⊆ O1 and O ⊆ O2 \ O1 then C(O2 \ O) ⊆ O1.
    for e1 in entries {
        for e2 in entries {
            if !e2.chosen.is_subset(&e1.options) {
                continue;
            }
            for e in entries {
                let diff: BTreeSet<usize> =
                    e2.options.difference(&e1.options).copied().collect();
                if !e.options.is_subset(&diff) {
                    continue;
                }
                let reduced: BTreeSet<usize> =
                    e2.options.difference(&e.options).copied().collect();
                if reduced.is_empty() {
                    continue;
                }
                if let Some(er) = table.lookup(&reduced) {
                    if !er.chosen.is_subset(&e1.options) {
                        report.push(
                            Axiom::C3b,
                            format!(
                                "O1={} O2={} O={}",
                                set_label(&e1.options),
                                set_label(&e2.options),
                                set_label(&e.options)
                            ),
                        );
                    }
                }
            }
        }
    }

    // C4a: lambda C(O2) ⊆ C(lambda O2), per scalar, when both sets are in
    // the domain (the strongest instance O1 = C(O2) covers all O1).
    for lambda in scalars {
        for e2 in entries {
            let scaled: Vec<Gamble> = e2
                .options
                .iter()
                .map(|&i| pool.options()[i].scale(lambda))
                .collect();
            let Some(scaled_set) = pool_image(pool, &scaled) else {
                continue;
            };
            let Some(es) = table.lookup(&scaled_set) else {
                continue;
            };
            let chosen_scaled: Vec<Gamble> = e2
                .chosen
                .iter()
                .map(|&i| pool.options()[i].scale(lambda))
                .collect();
            let image = pool_image(pool, &chosen_scaled)
                .expect("scaled chosen options are among scaled options");
            if !image.is_subset(&es.chosen) {
                report.push(
                    Axiom::C4a,
                    format!(
                        "lambda={} O2={}",
                        crate::rational::format(lambda),
                        set_label(&e2.options)
                    ),
                );
            }
        }
    }

    // C4b: C(O2) + {u} ⊆ C(O2 + {u}) for pool translations.
    for (u, gu) in pool.options().iter().enumerate() {
        for e2 in entries {
            let translated: Vec<Gamble> = e2
                .options
                .iter()
                .map(|&i| pool.options()[i].add(gu))
                .collect::<Result<_>>()?;
            let Some(translated_set) = pool_image(pool, &translated) else {
                continue;
            };
            let Some(et) = table.lookup(&translated_set) else {
                continue;
            };
            let chosen_translated: Vec<Gamble> = e2
                .chosen
                .iter()
                .map(|&i| pool.options()[i].add(gu))
                .collect::<Result<_>>()?;
            let image = pool_image(pool, &chosen_translated)
                .expect("translated chosen options are among translated options");
            if !image.is_subset(&et.chosen) {
                report.push(
                    Axiom::C4b,
                    format!("u=option {u} O2={}", set_label(&e2.options)),
                );
            }
        }
    }

    Ok(report.finish())
}

/// The pairwise desirability model: options strictly preferred to zero.
pub fn derive_desirability(table: &ChoiceTable) -> Result<GeneratorSet> {
    let pool = table.pool();
    let zero = pool.zero_index().ok_or(Error::MissingZeroOption)?;
    let mut generators = Vec::new();
    for (u, gu) in pool.options().iter().enumerate() {
        if u == zero {
            continue;
        }
        let pair: BTreeSet<usize> = [zero, u].into_iter().collect();
        let entry = table.lookup(&pair).ok_or(Error::MissingZeroPair(u))?;
        let only_u: BTreeSet<usize> = [u].into_iter().collect();
        if entry.chosen == only_u && !generators.contains(gu) {
            generators.push(gu.clone());
        }
    }
    GeneratorSet::new(pool.space().clone(), generators)
}

/// Report of the indifference-compatibility check: for every domain entry,
/// options whose difference is exchangeably indifferent (lies in the
/// kernel of the symmetrization projection) must be treated alike.
pub fn check_indifference_compatibility(table: &ChoiceTable) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let pool = table.pool();
    let n = pool.options().len();
    // Precompute which option pairs are class-equal.
    let mut class_equal = vec![vec![false; n]; n];
    for u in 0..n {
        for v in (u + 1)..n {
            let eq = counts::class_equal(&pool.options()[u], &pool.options()[v])?;
            class_equal[u][v] = eq;
            class_equal[v][u] = eq;
        }
    }
    for e in table.entries() {
        let opts: Vec<usize> = e.options.iter().copied().collect();
        for (i, &u) in opts.iter().enumerate() {
            for &v in &opts[i + 1..] {
                if class_equal[u][v] && (e.chosen.contains(&u) != e.chosen.contains(&v)) {
                    report.push(
                        Axiom::C1, // reported under its own heading below
                        String::new(),
                    );
                    report.violations.pop();
                    report.violations.push(Violation {
                        axiom: Axiom::C1,
                        instance: format!(
                            "indifference: options {u} and {v} treated asymmetrically in {}",
                            set_label(&e.options)
                        ),
                    });
                }
            }
        }
    }
    Ok(report.finish())
}

/// A representing choice table over an arbitrary ordered key space
/// (count gambles or Bernstein polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentingTable<K: Ord + Clone> {
    entries: Vec<(BTreeSet<K>, BTreeSet<K>)>,
}

impl<K: Ord + Clone> RepresentingTable<K> {
    pub fn entries(&self) -> &[(BTreeSet<K>, BTreeSet<K>)] {
        &self.entries
    }

    pub fn lookup(&self, key: &BTreeSet<K>) -> Option<&BTreeSet<K>> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn represent_with<K, F>(table: &ChoiceTable, mut map: F) -> Result<RepresentingTable<K>>
where
    K: Ord + Clone + std::fmt::Debug,
    F: FnMut(&Gamble) -> Result<K>,
{
    let pool = table.pool();
    let images: Vec<K> = pool
        .options()
        .iter()
        .map(&mut map)
        .collect::<Result<_>>()?;
    let mut entries: Vec<(BTreeSet<K>, BTreeSet<K>)> = Vec::new();
    for e in table.entries() {
        let key: BTreeSet<K> = e.options.iter().map(|&i| images[i].clone()).collect();
        let value: BTreeSet<K> = e.chosen.iter().map(|&i| images[i].clone()).collect();
        if let Some((_, existing)) = entries.iter().find(|(k, _)| k == &key) {
            if existing != &value {
                return Err(Error::RepresentationConflict(format!(
                    "domain entries {} map to one key with different chosen images",
                    set_label(&e.options)
                )));
            }
        } else {
            entries.push((key, value));
        }
    }
    Ok(RepresentingTable { entries })
}

/// The count form of the representing choice function.  Fails with a
/// well-definedness conflict when the table is not exchangeable.
pub fn represent_choice(table: &ChoiceTable) -> Result<RepresentingTable<CountGamble>> {
    represent_with(table, counts::hy_map)
}

/// The polynomial form of the representing choice function.
pub fn represent_choice_poly(table: &ChoiceTable) -> Result<RepresentingTable<BernsteinPoly>> {
    represent_with(table, bernstein::mn_map)
}

/// Applies a representing table back to an option set on the sequence
/// space: keeps the options whose count image was chosen.
pub fn reconstruct_choice(
    table: &RepresentingTable<CountGamble>,
    options: &[Gamble],
) -> Result<Vec<Gamble>> {
    let images: Vec<CountGamble> = options
        .iter()
        .map(counts::hy_map)
        .collect::<Result<_>>()?;
    let key: BTreeSet<CountGamble> = images.iter().cloned().collect();
    let chosen_images = table
        .lookup(&key)
        .ok_or(Error::UnknownRepresentationKey)?;
    Ok(options
        .iter()
        .zip(&images)
        .filter(|(_, img)| chosen_images.contains(img))
        .map(|(g, _)| g.clone())
        .collect())
}
