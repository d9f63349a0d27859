//! Python bindings for the exchangeability toolkit.
//!
//! Rationals cross the boundary as exact `"p/q"` strings; structured
//! values (spaces, gambles, tables) cross as the same shapes the CLI's
//! JSON files use, so the two front ends stay interchangeable.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use exchg_core::bernstein::{self, BernsteinPoly, SimplexPoint};
use exchg_core::choice::{self, ChoiceTable, Entry, OptionPool};
use exchg_core::countable::{self, FiniteStructureGamble, Horizon};
use exchg_core::counts::{self, CountGamble};
use exchg_core::desirability::{self, Coherence, ConeMembership, Exchangeability, GeneratorSet};
use exchg_core::gamble::{Gamble, OutcomeSpace, SequenceSpace};
use exchg_core::permutations;
use exchg_core::rational::{self, Rational};
use exchg_core::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    rational::parse(s).map_err(err)
}

/// A space of outcome sequences of fixed length.
#[pyclass(name = "Space", frozen)]
#[derive(Clone)]
struct PySpace {
    inner: SequenceSpace,
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(outcomes: Vec<String>, length: usize) -> PyResult<Self> {
        let base = OutcomeSpace::new(outcomes).map_err(err)?;
        let inner = SequenceSpace::new(base, length).map_err(err)?;
        Ok(PySpace { inner })
    }

    #[getter]
    fn outcomes(&self) -> Vec<String> {
        self.inner.base().labels().to_vec()
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    /// Every sequence of the space, as string keys, in index order.
    fn keys(&self) -> Vec<String> {
        (0..self.inner.size())
            .map(|i| self.inner.key_of(&self.inner.sequence_at(i)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(outcomes={:?}, length={})",
            self.outcomes(),
            self.length()
        )
    }

    fn __eq__(&self, other: &PySpace) -> bool {
        self.inner == other.inner
    }
}

fn gamble_from_dict(space: &SequenceSpace, values: &Bound<'_, PyDict>) -> PyResult<Gamble> {
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in values.iter() {
        map.insert(k.extract()?, v.extract()?);
    }
    exchg_core::json::gamble_from_map(space, &map).map_err(err)
}

fn gamble_values_dict<'py>(py: Python<'py>, g: &Gamble) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    let s = g.space();
    for i in 0..s.size() {
        d.set_item(s.key_of(&s.sequence_at(i)), rational::format(&g.values()[i]))?;
    }
    Ok(d)
}

/// A gamble: an exact rational payoff for every sequence of its space.
#[pyclass(name = "Gamble", frozen)]
#[derive(Clone)]
struct PyGamble {
    inner: Gamble,
}

#[pymethods]
impl PyGamble {
    #[new]
    fn new(space: PySpace, values: &Bound<'_, PyDict>) -> PyResult<Self> {
        Ok(PyGamble {
            inner: gamble_from_dict(&space.inner, values)?,
        })
    }

    #[getter]
    fn space(&self) -> PySpace {
        PySpace {
            inner: self.inner.space().clone(),
        }
    }

    fn values<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        gamble_values_dict(py, &self.inner)
    }

    fn value(&self, key: &str) -> PyResult<String> {
        let s = self.inner.space();
        for i in 0..s.size() {
            if s.key_of(&s.sequence_at(i)) == key {
                return Ok(rational::format(&self.inner.values()[i]));
            }
        }
        Err(PyValueError::new_err(format!("unknown sequence key {key:?}")))
    }

    /// The permutation-invariant projection of the gamble.
    fn project(&self) -> PyResult<PyGamble> {
        Ok(PyGamble {
            inner: permutations::symmetrize(&self.inner).map_err(err)?,
        })
    }

    fn is_invariant(&self) -> bool {
        permutations::is_permutation_invariant(&self.inner)
    }

    /// The count-space representation of the projected gamble.
    fn to_counts(&self) -> PyResult<PyCountGamble> {
        Ok(PyCountGamble {
            inner: counts::hy_map(&self.inner).map_err(err)?,
        })
    }

    /// The polynomial representation of the projected gamble.
    fn to_poly(&self) -> PyResult<PyBernsteinPoly> {
        Ok(PyBernsteinPoly {
            inner: bernstein::mn_map(&self.inner).map_err(err)?,
        })
    }

    fn add(&self, other: &PyGamble) -> PyResult<PyGamble> {
        Ok(PyGamble {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn sub(&self, other: &PyGamble) -> PyResult<PyGamble> {
        Ok(PyGamble {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn scale(&self, factor: &str) -> PyResult<PyGamble> {
        Ok(PyGamble {
            inner: self.inner.scale(&parse_rational(factor)?),
        })
    }

    fn __eq__(&self, other: &PyGamble) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Gamble(space={}, ...)", self.space().__repr__())
    }
}

/// A gamble on count vectors.
#[pyclass(name = "CountGamble", frozen)]
#[derive(Clone)]
struct PyCountGamble {
    inner: CountGamble,
}

#[pymethods]
impl PyCountGamble {
    /// Pairs of (count-vector key, value), in the space's canonical order.
    fn values(&self) -> Vec<(String, String)> {
        let cs = self.inner.space();
        (0..cs.size())
            .map(|i| {
                (
                    cs.vectors()[i].key(),
                    rational::format(&self.inner.values()[i]),
                )
            })
            .collect()
    }

    /// The invariant sequence gamble this count gamble represents.
    fn lift(&self) -> PyResult<PyGamble> {
        Ok(PyGamble {
            inner: counts::lift_count_gamble(&self.inner).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyCountGamble) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("CountGamble({:?})", self.values())
    }
}

/// A polynomial in Bernstein form on the simplex.
#[pyclass(name = "BernsteinPoly", frozen)]
#[derive(Clone)]
struct PyBernsteinPoly {
    inner: BernsteinPoly,
}

#[pymethods]
impl PyBernsteinPoly {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Pairs of (exponent key, coefficient).
    fn coefficients(&self) -> Vec<(String, String)> {
        let cs = self.inner.coeff_space();
        (0..cs.size())
            .map(|i| {
                (
                    cs.vectors()[i].key(),
                    rational::format(&self.inner.coefficients()[i]),
                )
            })
            .collect()
    }

    /// The same polynomial written at a higher degree.
    fn elevate(&self, degree: usize) -> PyResult<PyBernsteinPoly> {
        Ok(PyBernsteinPoly {
            inner: bernstein::degree_elevate(&self.inner, degree).map_err(err)?,
        })
    }

    /// Exact evaluation at a simplex point given as "p/q" coordinates.
    fn eval(&self, theta: Vec<String>) -> PyResult<String> {
        let coords = theta
            .iter()
            .map(|s| parse_rational(s))
            .collect::<PyResult<Vec<_>>>()?;
        let point = SimplexPoint::new(self.inner.base().clone(), coords).map_err(err)?;
        Ok(rational::format(
            &bernstein::poly_eval(&self.inner, &point).map_err(err)?,
        ))
    }

    fn __eq__(&self, other: &PyBernsteinPoly) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "BernsteinPoly(degree={}, coefficients={:?})",
            self.degree(),
            self.coefficients()
        )
    }
}

fn generator_set(space: &PySpace, generators: &Bound<'_, PyList>) -> PyResult<GeneratorSet> {
    let gens = generators
        .iter()
        .map(|item| {
            let d: Bound<'_, PyDict> = item.extract()?;
            gamble_from_dict(&space.inner, &d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    GeneratorSet::new(space.inner.clone(), gens).map_err(err)
}

/// Coherence and exchangeability of a desirability assessment.
///
/// Returns a dict with "coherent", "exchangeable", and on failure an
/// exact "certificate" of nonnegative multipliers.
#[pyfunction]
fn desirability_check<'py>(
    py: Python<'py>,
    space: PySpace,
    generators: &Bound<'py, PyList>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = generator_set(&space, generators)?;
    let report = PyDict::new_bound(py);
    match desirability::is_coherent(&a).map_err(err)? {
        Coherence::Incoherent { lambda } => {
            report.set_item("coherent", false)?;
            report.set_item("exchangeable", false)?;
            report.set_item(
                "certificate",
                lambda.iter().map(rational::format).collect::<Vec<_>>(),
            )?;
            return Ok(report);
        }
        Coherence::Coherent => report.set_item("coherent", true)?,
    }
    match desirability::is_exchangeable(&a).map_err(err)? {
        Exchangeability::Exchangeable => report.set_item("exchangeable", true)?,
        Exchangeability::NotExchangeable { failing, lambda } => {
            report.set_item("exchangeable", false)?;
            report.set_item("failing_generator", failing)?;
            report.set_item(
                "certificate",
                lambda.iter().map(rational::format).collect::<Vec<_>>(),
            )?;
        }
    }
    Ok(report)
}

/// The count form of the representing assessment.
#[pyfunction]
fn desirability_represent(
    space: PySpace,
    generators: &Bound<'_, PyList>,
) -> PyResult<Vec<PyCountGamble>> {
    let a = generator_set(&space, generators)?;
    let rep = desirability::represent_desirability(&a).map_err(err)?;
    Ok(rep
        .generators()
        .iter()
        .map(|g| PyCountGamble { inner: g.clone() })
        .collect())
}

/// The polynomial form of the representing assessment.
#[pyfunction]
fn desirability_represent_poly(
    space: PySpace,
    generators: &Bound<'_, PyList>,
) -> PyResult<Vec<PyBernsteinPoly>> {
    let a = generator_set(&space, generators)?;
    let rep = desirability::represent_desirability_poly(&a).map_err(err)?;
    Ok(rep.into_iter().map(|p| PyBernsteinPoly { inner: p }).collect())
}

/// Whether a target gamble lies in the cone generated by the assessment.
#[pyfunction]
fn cone_member(space: PySpace, generators: &Bound<'_, PyList>, target: PyGamble) -> PyResult<bool> {
    let a = generator_set(&space, generators)?;
    Ok(matches!(
        desirability::cone_member(&a, &target.inner).map_err(err)?,
        ConeMembership::Member(_)
    ))
}

fn choice_table(
    space: &PySpace,
    pool: &Bound<'_, PyList>,
    entries: &Bound<'_, PyList>,
) -> PyResult<ChoiceTable> {
    let options = pool
        .iter()
        .map(|item| {
            let d: Bound<'_, PyDict> = item.extract()?;
            gamble_from_dict(&space.inner, &d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let pool = OptionPool::new(space.inner.clone(), options).map_err(err)?;
    let entries = entries
        .iter()
        .map(|item| {
            let (options, chosen): (Vec<usize>, Vec<usize>) = item.extract()?;
            Ok(Entry {
                options: options.into_iter().collect::<BTreeSet<_>>(),
                chosen: chosen.into_iter().collect::<BTreeSet<_>>(),
            })
        })
        .collect::<PyResult<Vec<_>>>()?;
    ChoiceTable::new(pool, entries).map_err(err)
}

/// Rationality axioms and indifference compatibility of a choice table.
///
/// `entries` is a list of (options, chosen) index pairs into `pool`.
#[pyfunction]
#[pyo3(signature = (space, pool, entries, scalars = vec!["1/2".into(), "1".into(), "2".into()]))]
fn choice_check<'py>(
    py: Python<'py>,
    space: PySpace,
    pool: &Bound<'py, PyList>,
    entries: &Bound<'py, PyList>,
    scalars: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let table = choice_table(&space, pool, entries)?;
    let scalars = scalars
        .iter()
        .map(|s| parse_rational(s))
        .collect::<PyResult<Vec<_>>>()?;
    let axioms = choice::check_coherence_axioms(&table, &scalars).map_err(err)?;
    let compat = choice::check_indifference_compatibility(&table).map_err(err)?;
    let report = PyDict::new_bound(py);
    report.set_item("axioms_pass", axioms.passed())?;
    report.set_item(
        "axiom_violations",
        axioms
            .violations
            .iter()
            .map(|v| (v.axiom.to_string(), v.instance.clone()))
            .collect::<Vec<_>>(),
    )?;
    report.set_item("compatible", compat.passed())?;
    report.set_item(
        "compatibility_violations",
        compat
            .violations
            .iter()
            .map(|v| (v.axiom.to_string(), v.instance.clone()))
            .collect::<Vec<_>>(),
    )?;
    Ok(report)
}

/// The representing choice table over count gambles: a list of
/// (options, chosen) pairs of `CountGamble` lists.
#[pyfunction]
fn choice_represent(
    space: PySpace,
    pool: &Bound<'_, PyList>,
    entries: &Bound<'_, PyList>,
) -> PyResult<Vec<(Vec<PyCountGamble>, Vec<PyCountGamble>)>> {
    let table = choice_table(&space, pool, entries)?;
    let rep = choice::represent_choice(&table).map_err(err)?;
    Ok(rep
        .entries()
        .iter()
        .map(|(options, chosen)| {
            (
                options
                    .iter()
                    .map(|g| PyCountGamble { inner: g.clone() })
                    .collect(),
                chosen
                    .iter()
                    .map(|g| PyCountGamble { inner: g.clone() })
                    .collect(),
            )
        })
        .collect())
}

fn finite_structure(
    base: &Arc<OutcomeSpace>,
    degree: usize,
    values: &Bound<'_, PyDict>,
) -> PyResult<FiniteStructureGamble> {
    let space = SequenceSpace::new(base.clone(), degree).map_err(err)?;
    FiniteStructureGamble::new(gamble_from_dict(&space, values)?).map_err(err)
}

/// Per-degree exchangeability of a finite-structure assessment up to the
/// horizon.  `generators` is a list of (degree, values-dict) pairs.
#[pyfunction]
#[pyo3(signature = (outcomes, generators, horizon = countable::DEFAULT_HORIZON))]
fn countable_check<'py>(
    py: Python<'py>,
    outcomes: Vec<String>,
    generators: &Bound<'py, PyList>,
    horizon: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let base = OutcomeSpace::new(outcomes).map_err(err)?;
    let gens = generators
        .iter()
        .map(|item| {
            let (degree, values): (usize, Bound<'_, PyDict>) = item.extract()?;
            finite_structure(&base, degree, &values)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let report = countable::check_countable_exchangeable_desirability(
        &base,
        &gens,
        Horizon::new(horizon).map_err(err)?,
    )
    .map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("horizon", report.horizon)?;
    out.set_item("passed", report.passed())?;
    out.set_item(
        "degrees",
        report
            .degrees
            .iter()
            .map(|d| (d.degree, d.passed, d.detail.clone()))
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// The union-of-degrees polynomial representation of a finite-structure
/// assessment.
#[pyfunction]
#[pyo3(signature = (outcomes, generators, horizon = countable::DEFAULT_HORIZON))]
fn countable_represent(
    outcomes: Vec<String>,
    generators: &Bound<'_, PyList>,
    horizon: usize,
) -> PyResult<Vec<PyBernsteinPoly>> {
    let base = OutcomeSpace::new(outcomes).map_err(err)?;
    let gens = generators
        .iter()
        .map(|item| {
            let (degree, values): (usize, Bound<'_, PyDict>) = item.extract()?;
            finite_structure(&base, degree, &values)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let polys = countable::countable_represent_desirability(
        &base,
        &gens,
        Horizon::new(horizon).map_err(err)?,
    )
    .map_err(err)?;
    Ok(polys
        .generators
        .into_iter()
        .map(|p| PyBernsteinPoly { inner: p })
        .collect())
}

#[pymodule]
fn exchg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyGamble>()?;
    m.add_class::<PyCountGamble>()?;
    m.add_class::<PyBernsteinPoly>()?;
    m.add_function(wrap_pyfunction!(desirability_check, m)?)?;
    m.add_function(wrap_pyfunction!(desirability_represent, m)?)?;
    m.add_function(wrap_pyfunction!(desirability_represent_poly, m)?)?;
    m.add_function(wrap_pyfunction!(cone_member, m)?)?;
    m.add_function(wrap_pyfunction!(choice_check, m)?)?;
    m.add_function(wrap_pyfunction!(choice_represent, m)?)?;
    m.add_function(wrap_pyfunction!(countable_check, m)?)?;
    m.add_function(wrap_pyfunction!(countable_represent, m)?)?;
    Ok(())
}
