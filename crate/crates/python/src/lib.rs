//! Python bindings for spinrep.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spinrep::cli::repfile::{self, Format};
use spinrep::meataxe::DEFAULT_RNG_SEED;
use spinrep::{Error, SignChoice};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Inconclusive(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn format_from(name: &str) -> PyResult<Format> {
    match name {
        "json" => Ok(Format::Json),
        "text" => Ok(Format::Text),
        _ => Err(PyValueError::new_err(format!(
            "format must be 'json' or 'text', got '{name}'"
        ))),
    }
}

/// Generator matrices of a spin representation.
#[pyclass(name = "Representation", module = "pyspinrep", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRepresentation {
    inner: spinrep::Representation,
}

impl From<spinrep::Representation> for PyRepresentation {
    fn from(inner: spinrep::Representation) -> Self {
        PyRepresentation { inner }
    }
}

#[pymethods]
impl PyRepresentation {
    /// Parse a JSON or text representation file's contents.
    #[staticmethod]
    fn parse(contents: &str) -> PyResult<Self> {
        repfile::deserialize(contents).map(Into::into).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn cover(&self) -> String {
        self.inner.cover().to_string()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().name()
    }

    #[getter]
    fn recipe(&self) -> String {
        self.inner.recipe().to_string()
    }

    /// Entries of T₁,…,Tₙ₋₁ as strings in the field's text grammar.
    fn matrices(&self) -> Vec<Vec<Vec<String>>> {
        repfile::RepFile::from_representation(&self.inner).matrices
    }

    #[pyo3(signature = (format = "json"))]
    fn dumps(&self, format: &str) -> PyResult<String> {
        Ok(repfile::serialize(&self.inner, format_from(format)?))
    }

    /// Named relation checks; `complemma` is only run for the tilde cover.
    fn verify(&self) -> PyResult<BTreeMap<String, bool>> {
        let r = &self.inner;
        let mut report = spinrep::check_relations(r);
        report.extend(spinrep::check_delta(r));
        if r.cover() == spinrep::Cover::Tilde {
            report.extend(spinrep::check_complemma(r, r.n()).map_err(to_py)?);
        }
        Ok(report
            .checks
            .iter()
            .map(|c| {
                let name = c.to_string();
                let key = name.rsplit_once(':').map_or(name.as_str(), |(k, _)| k).to_owned();
                (key, c.passed)
            })
            .collect())
    }

    #[pyo3(signature = (rng_seed = DEFAULT_RNG_SEED))]
    fn is_irreducible(&self, rng_seed: u64) -> PyResult<bool> {
        spinrep::is_irreducible(&self.inner, rng_seed)
            .map(|v| v.is_irreducible())
            .map_err(to_py)
    }

    fn end_dim(&self) -> PyResult<usize> {
        spinrep::end_dim(&self.inner).map_err(to_py)
    }

    fn is_equivalent(&self, other: &PyRepresentation) -> PyResult<bool> {
        spinrep::is_equivalent(&self.inner, &other.inner).map_err(to_py)
    }

    /// Composition factors, bottom of the series first.
    #[pyo3(signature = (rng_seed = DEFAULT_RNG_SEED))]
    fn chop(&self, rng_seed: u64) -> PyResult<Vec<PyRepresentation>> {
        let report = spinrep::chop(&self.inner, rng_seed).map_err(to_py)?;
        Ok(report.factors.into_iter().map(|f| f.rep.into()).collect())
    }

    fn associate(&self) -> PyRepresentation {
        spinrep::associate(&self.inner).into()
    }

    fn twist(&self) -> PyResult<PyRepresentation> {
        spinrep::twist_to_hat(&self.inner).map(Into::into).map_err(to_py)
    }

    /// 𝔖: the representation of S̃ₙ₊₁ obtained by doubling.
    fn double(&self) -> PyResult<PyRepresentation> {
        spinrep::double_s(&self.inner).map(Into::into).map_err(to_py)
    }

    fn __eq__(&self, other: &PyRepresentation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(n={}, degree={}, field={}, cover={})",
            self.inner.n(),
            self.inner.degree(),
            self.inner.field().name(),
            self.inner.cover()
        )
    }
}

/// Build the basic spin representation of S̃ₙ; `signs` maps positions to "plus" or "minus".
#[pyfunction]
#[pyo3(signature = (n, characteristic, signs = None))]
fn build(
    n: usize,
    characteristic: u64,
    signs: Option<BTreeMap<usize, String>>,
) -> PyResult<PyRepresentation> {
    let mut choices = BTreeMap::new();
    for (m, s) in signs.unwrap_or_default() {
        choices.insert(m, s.parse::<SignChoice>().map_err(to_py)?);
    }
    spinrep::build_chain(n, characteristic, &choices)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn delta_degree(n: usize, characteristic: u64) -> PyResult<usize> {
    spinrep::delta_degree(n, characteristic).map_err(to_py)
}

#[pymodule]
fn pyspinrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(delta_degree, m)?)?;
    m.add("DEFAULT_RNG_SEED", DEFAULT_RNG_SEED)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
