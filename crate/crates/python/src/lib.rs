//! Python bindings for the nilcert toolkit.

use nilcert::catalog;
use nilcert::certificates::random_invertible;
use nilcert::degeneration;
use nilcert::derivations::derivation_space;
use nilcert::report::{self, RunConfig, RunInputs};
use nilcert::text::{self, AlgebraFile};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_error(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Serialize through JSON so nested reports arrive as plain dicts.
fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(runtime_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A commutative algebra over Q(i) given by its structure constants.
#[pyclass(name = "Algebra", module = "pynilcert")]
struct PyAlgebra {
    inner: AlgebraFile,
}

#[pymethods]
impl PyAlgebra {
    /// Parse the `.alg` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        AlgebraFile::parse(text).map(|inner| PyAlgebra { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        AlgebraFile::from_catalog(name).map(|inner| PyAlgebra { inner }).map_err(value_error)
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.table.dim()
    }

    /// Nonzero constants as `(i, j, k, value)` with 1-based indices.
    fn constants(&self) -> Vec<(usize, usize, usize, String)> {
        let t = &self.inner.table;
        let n = t.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = t.get(i, j, k);
                    if !c.is_zero() {
                        out.push((i + 1, j + 1, k + 1, c.to_string()));
                    }
                }
            }
        }
        out
    }

    fn fingerprint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &catalog::fingerprint(&self.inner.table))
    }

    /// Dimension of the derivation algebra and a basis of it, each matrix
    /// as rows of exact scalars printed as strings.
    fn derivations(&self) -> (usize, Vec<Vec<Vec<String>>>) {
        let der = derivation_space(&self.inner.table);
        let basis = der
            .basis
            .iter()
            .map(|m| m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect())
            .collect();
        (der.dimension, basis)
    }

    /// Catalog names sharing this algebra's invariants.
    fn identify(&self) -> PyResult<Vec<String>> {
        catalog::identify(&self.inner.table).map_err(value_error)
    }

    /// The same algebra in a random basis drawn from `seed`.
    fn conjugate(&self, seed: u64) -> PyResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(&mut rng, self.inner.table.dim());
        let table = self.inner.table.change_basis(&g).map_err(runtime_error)?;
        Ok(PyAlgebra { inner: AlgebraFile { name: self.inner.name.clone(), table } })
    }

    fn to_text(&self) -> String {
        self.inner.print()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.table == other.inner.table
    }

    fn __repr__(&self) -> String {
        match &self.inner.name {
            Some(n) => format!("Algebra({n}, dim={})", self.dim()),
            None => format!("Algebra(dim={})", self.dim()),
        }
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::names().map(String::from).collect()
}

/// Verify every witness in a `.wit` text and return one verdict dict each.
#[pyfunction]
fn verify_witnesses<'py>(py: Python<'py>, text: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let witnesses = text::parse_witnesses(text).map_err(value_error)?;
    witnesses
        .iter()
        .map(|w| {
            let v = py.detach(|| degeneration::verify(w)).map_err(runtime_error)?;
            to_python(py, &v)
        })
        .collect()
}

/// The verified degeneration graph as DOT or JSON text. `form` is one of
/// `"verified"`, `"closure"` or `"hasse"`.
#[pyfunction]
#[pyo3(signature = (emit = "dot", form = "verified"))]
fn graph(py: Python<'_>, emit: &str, form: &str) -> PyResult<String> {
    let g = py.detach(nilcert::cli::verified_graph).map_err(|e| runtime_error(e.message))?;
    let g = match form {
        "verified" => g,
        "closure" => g.closure_graph(),
        "hasse" => g.hasse_graph(),
        other => return Err(PyValueError::new_err(format!("unknown graph form `{other}`"))),
    };
    match emit {
        "dot" => Ok(g.to_dot()),
        "json" => Ok(g.to_json()),
        other => Err(PyValueError::new_err(format!("unknown format `{other}`"))),
    }
}

/// Run the full check over the shipped data and return the report.
#[pyfunction]
#[pyo3(signature = (seed = 1, samples = 1000, jobs = 0))]
fn verify_all<'py>(py: Python<'py>, seed: u64, samples: usize, jobs: usize) -> PyResult<Bound<'py, PyDict>> {
    let config = RunConfig { seed, borel_samples: (samples / 5).max(1), escape_samples: samples, jobs, ..RunConfig::default() };
    let rep = py.detach(|| report::run(&RunInputs::shipped(), &config)).map_err(runtime_error)?;
    Ok(to_python(py, &rep)?.cast_into::<PyDict>()?)
}

#[pymodule]
fn pynilcert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(graph, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
