//! JSON interchange formats shared with the command-line front end.
//!
//! Rationals travel as strings `"p/q"` (or `"p"`); gambles carry a map
//! from sequence keys to values; count gambles and Bernstein polynomials
//! carry ordered key/value pair lists in canonical enumeration order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bernstein::BernsteinPoly;
use crate::choice::{ChoiceTable, Entry, OptionPool};
use crate::countable::FiniteStructureGamble;
use crate::counts::{CountGamble, CountSpace, CountVector};
use crate::desirability::{CountGeneratorSet, GeneratorSet};
use crate::gamble::{Gamble, OutcomeSpace, SequenceSpace};
use crate::rational;
use crate::{Error, Result};

/// `{"outcomes": [...], "length": N}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    pub outcomes: Vec<String>,
    pub length: usize,
}

impl SpaceJson {
    pub fn of(space: &SequenceSpace) -> Self {
        SpaceJson {
            outcomes: space.base().labels().to_vec(),
            length: space.length(),
        }
    }

    pub fn to_space(&self) -> Result<SequenceSpace> {
        SequenceSpace::new(OutcomeSpace::new(self.outcomes.clone())?, self.length)
    }
}

/// `{"space": {...}, "values": {"aa": "1", ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GambleJson {
    pub space: SpaceJson,
    pub values: BTreeMap<String, String>,
}

fn values_map(g: &Gamble) -> BTreeMap<String, String> {
    g.space()
        .sequences()
        .zip(g.values())
        .map(|(x, v)| (g.space().key_of(&x), rational::format(v)))
        .collect()
}

pub fn gamble_from_map(space: &SequenceSpace, map: &BTreeMap<String, String>) -> Result<Gamble> {
    let mut values = vec![rational::zero(); space.size()];
    let mut seen = vec![false; space.size()];
    for (key, raw) in map {
        let idx = space
            .sequences()
            .position(|x| space.key_of(&x) == *key)
            .ok_or_else(|| Error::BadInput(format!("unknown sequence key {key:?}")))?;
        values[idx] = rational::parse(raw)?;
        seen[idx] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        let key = space.key_of(&space.sequence_at(missing));
        return Err(Error::BadInput(format!("missing sequence key {key:?}")));
    }
    Gamble::new(space.clone(), values)
}

impl GambleJson {
    pub fn of(g: &Gamble) -> Self {
        GambleJson {
            space: SpaceJson::of(g.space()),
            values: values_map(g),
        }
    }

    pub fn to_gamble(&self) -> Result<Gamble> {
        gamble_from_map(&self.space.to_space()?, &self.values)
    }
}

/// `{"count_space": {...}, "values": [["2,0","1"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountGambleJson {
    pub count_space: SpaceJson,
    pub values: Vec<(String, String)>,
}

fn count_values(g: &CountGamble) -> Vec<(String, String)> {
    g.space()
        .vectors()
        .iter()
        .zip(g.values())
        .map(|(m, v)| (m.key(), rational::format(v)))
        .collect()
}

fn count_gamble_from_pairs(
    space: &CountSpace,
    pairs: &[(String, String)],
) -> Result<CountGamble> {
    let mut values = vec![rational::zero(); space.size()];
    let mut seen = vec![false; space.size()];
    for (key, raw) in pairs {
        let counts: Vec<usize> = key
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadInput(format!("bad count key {key:?}")))
            })
            .collect::<Result<_>>()?;
        let idx = space
            .index_of(&CountVector::new(counts))
            .ok_or_else(|| Error::BadInput(format!("count key {key:?} not in space")))?;
        if seen[idx] {
            return Err(Error::BadInput(format!("duplicate count key {key:?}")));
        }
        values[idx] = rational::parse(raw)?;
        seen[idx] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::BadInput(format!(
            "missing count key {:?}",
            space.vectors()[missing].key()
        )));
    }
    CountGamble::new(space.clone(), values)
}

impl CountGambleJson {
    pub fn of(g: &CountGamble) -> Self {
        CountGambleJson {
            count_space: SpaceJson {
                outcomes: g.space().base().labels().to_vec(),
                length: g.space().total(),
            },
            values: count_values(g),
        }
    }

    pub fn to_count_gamble(&self) -> Result<CountGamble> {
        let base = OutcomeSpace::new(self.count_space.outcomes.clone())?;
        let space = CountSpace::new(base, self.count_space.length);
        count_gamble_from_pairs(&space, &self.values)
    }
}

/// `{"outcomes": [...], "degree": n, "coefficients": [["2,0","1"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BernsteinPolyJson {
    pub outcomes: Vec<String>,
    pub degree: usize,
    pub coefficients: Vec<(String, String)>,
}

impl BernsteinPolyJson {
    pub fn of(p: &BernsteinPoly) -> Self {
        BernsteinPolyJson {
            outcomes: p.base().labels().to_vec(),
            degree: p.degree(),
            coefficients: p
                .coeff_space()
                .vectors()
                .iter()
                .zip(p.coefficients())
                .map(|(m, c)| (m.key(), rational::format(c)))
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<BernsteinPoly> {
        let base = OutcomeSpace::new(self.outcomes.clone())?;
        let space = CountSpace::new(base.clone(), self.degree);
        let g = count_gamble_from_pairs(&space, &self.coefficients)?;
        BernsteinPoly::new(base, self.degree, g.values().to_vec())
    }
}

/// An assessment on a sequence space: `{"space": {...}, "generators":
/// [{"aa": "1", ...}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssessmentJson {
    pub space: SpaceJson,
    pub generators: Vec<BTreeMap<String, String>>,
}

impl AssessmentJson {
    pub fn of(a: &GeneratorSet) -> Self {
        AssessmentJson {
            space: SpaceJson::of(a.space()),
            generators: a.generators().iter().map(values_map).collect(),
        }
    }

    pub fn to_generator_set(&self) -> Result<GeneratorSet> {
        let space = self.space.to_space()?;
        let gens = self
            .generators
            .iter()
            .map(|m| gamble_from_map(&space, m))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(space, gens)
    }
}

/// An assessment on a count space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountAssessmentJson {
    pub count_space: SpaceJson,
    pub generators: Vec<Vec<(String, String)>>,
}

impl CountAssessmentJson {
    pub fn of(a: &CountGeneratorSet) -> Self {
        CountAssessmentJson {
            count_space: SpaceJson {
                outcomes: a.space().base().labels().to_vec(),
                length: a.space().total(),
            },
            generators: a.generators().iter().map(count_values).collect(),
        }
    }

    pub fn to_count_generator_set(&self) -> Result<CountGeneratorSet> {
        let base = OutcomeSpace::new(self.count_space.outcomes.clone())?;
        let space = CountSpace::new(base, self.count_space.length);
        let gens = self
            .generators
            .iter()
            .map(|pairs| count_gamble_from_pairs(&space, pairs))
            .collect::<Result<Vec<_>>>()?;
        CountGeneratorSet::new(space, gens)
    }
}

/// `{"pool": [gamble...], "entries": [{"options": [...], "chosen": [...]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChoiceTableJson {
    pub pool: Vec<GambleJson>,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub options: Vec<usize>,
    pub chosen: Vec<usize>,
}

impl ChoiceTableJson {
    pub fn of(t: &ChoiceTable) -> Self {
        ChoiceTableJson {
            pool: t.pool().options().iter().map(GambleJson::of).collect(),
            entries: t
                .entries()
                .iter()
                .map(|e| EntryJson {
                    options: e.options.iter().copied().collect(),
                    chosen: e.chosen.iter().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn to_choice_table(&self) -> Result<ChoiceTable> {
        if self.pool.is_empty() {
            return Err(Error::BadInput("choice table needs a non-empty pool".into()));
        }
        let space = self.pool[0].space.to_space()?;
        let options = self
            .pool
            .iter()
            .map(|g| g.to_gamble())
            .collect::<Result<Vec<_>>>()?;
        let pool = OptionPool::new(space, options)?;
        let entries = self
            .entries
            .iter()
            .map(|e| Entry {
                options: e.options.iter().copied().collect(),
                chosen: e.chosen.iter().copied().collect(),
            })
            .collect();
        ChoiceTable::new(pool, entries)
    }
}

/// A gamble of finite structure: the shared gamble format plus its
/// (minimal) degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteStructureGambleJson {
    pub outcomes: Vec<String>,
    pub degree: usize,
    pub values: BTreeMap<String, String>,
}

impl FiniteStructureGambleJson {
    pub fn of(f: &FiniteStructureGamble) -> Self {
        FiniteStructureGambleJson {
            outcomes: f.base().labels().to_vec(),
            degree: f.degree(),
            values: values_map(f.table()),
        }
    }

    pub fn to_finite_structure(&self) -> Result<FiniteStructureGamble> {
        let base = OutcomeSpace::new(self.outcomes.clone())?;
        let space = SequenceSpace::new(base, self.degree)?;
        FiniteStructureGamble::new(gamble_from_map(&space, &self.values)?)
    }
}

/// An assessment of gambles of finite structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountableAssessmentJson {
    pub outcomes: Vec<String>,
    pub generators: Vec<FiniteStructureGambleJson>,
}

impl CountableAssessmentJson {
    pub fn of(base: &Arc<OutcomeSpace>, gens: &[FiniteStructureGamble]) -> Self {
        CountableAssessmentJson {
            outcomes: base.labels().to_vec(),
            generators: gens.iter().map(FiniteStructureGambleJson::of).collect(),
        }
    }

    pub fn to_parts(&self) -> Result<(Arc<OutcomeSpace>, Vec<FiniteStructureGamble>)> {
        let base = OutcomeSpace::new(self.outcomes.clone())?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let f = g.to_finite_structure()?;
                if f.base() != &base {
                    return Err(Error::BadInput(
                        "generator outcome labels differ from the assessment's".into(),
                    ));
                }
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((base, gens))
    }
}

/// Serializes any of the DTOs with sorted keys and a trailing newline.
pub fn to_string_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::BadInput(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Parses a DTO, mapping syntax errors to `BadInput` with position info.
pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| {
        Error::BadInput(format!(
            "invalid JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}
