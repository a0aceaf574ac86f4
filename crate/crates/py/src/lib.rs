//! Python bindings for `swlab`: fixtures, verification, Poincaré series,
//! Schur dimensions, fusion, Casimir scalars and spectra.
//!
//! Structured results are returned as plain dicts and lists with the same
//! layout as the command-line JSON output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyInt;
use serde::Serialize;
use swlab::exactnum::QuadScalar;
use swlab::fusion::{dim_check, fuse};
use swlab::poincare::{centrality, determinant_pair, mn_matrices, poincare_series, PoincareData};
use swlab::schurweyl::{conjecture_probe, isotypic_dim, schur_dim, schur_from_elementary, Partition};
use swlab::spectra::{count_n, hyperboloid_spectrum, weyl_fit};
use swlab::symmetry::{self, named_fixture, Fixture, FIXTURE_NAMES};
use swlab::twistlie::casimir_on_component;
use swlab::Caps;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, V: Serialize>(py: Python<'py>, value: &V) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.get_type::<PyInt>().call1((digits,))
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

/// An exact symmetry `S` of `V ⊗ V`.
#[pyclass(name = "Symmetry", module = "swlab_py", frozen)]
struct PySymmetry {
    inner: symmetry::Symmetry<QuadScalar>,
    caps: Caps,
}

impl PySymmetry {
    fn series(&self) -> PyResult<PoincareData> {
        let k = (self.inner.dim() + 1).min(self.caps.exact_m);
        poincare_series(&self.inner, k).map_err(err)
    }

    fn even(&self) -> PyResult<(usize, Vec<QuadScalar>)> {
        let data = self.series()?;
        match (data.rank(), data.elementary()) {
            (Some(p), Some(e)) => Ok((p, e.into_iter().map(QuadScalar::integer).collect())),
            _ => Err(PyValueError::new_err("symmetry is not even")),
        }
    }
}

#[pymethods]
impl PySymmetry {
    /// One of the fixtures listed by `fixture_names()`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let inner = named_fixture(name).ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?;
        Ok(PySymmetry { inner, caps: Caps::from_env() })
    }

    /// Parses fixture JSON as written by `to_json` or `swlab make-fixture`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let fixture: Fixture = serde_json::from_str(text).map_err(err)?;
        Ok(PySymmetry { inner: fixture.to_symmetry().map_err(err)?, caps: Caps::from_env() })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&Fixture::from_symmetry(None, &self.inner)).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn field(&self) -> u64 {
        self.inner.field()
    }

    /// Involutivity, the braid relation and flip conjugation.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.verify())
    }

    /// Both Poincaré series through degree `max_k`, the classification and the roots α.
    #[pyo3(signature = (max_k = None))]
    fn poincare<'py>(&self, py: Python<'py>, max_k: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        match max_k {
            Some(k) => to_py(py, &poincare_series(&self.inner, k).map_err(err)?),
            None => to_py(py, &self.series()?),
        }
    }

    /// The rank `p` when the symmetry is even.
    fn rank(&self) -> PyResult<Option<usize>> {
        Ok(self.series()?.rank())
    }

    /// Rank of the Schur projector on `T^m(V)`.
    fn schur_dim(&self, lam: Vec<usize>) -> PyResult<usize> {
        schur_dim(&self.inner, &partition(lam)?, &self.caps).map_err(err)
    }

    /// `s_λ(α)`, the Schur polynomial at the roots of `P₋`.
    fn schur_formula(&self, lam: Vec<usize>) -> PyResult<String> {
        let (_, e) = self.even()?;
        Ok(schur_from_elementary(&partition(lam)?, &e).to_string())
    }

    fn isotypic_dim(&self, lam: Vec<usize>) -> PyResult<usize> {
        isotypic_dim(&self.inner, &partition(lam)?, &self.caps).map_err(err)
    }

    /// Littlewood–Richardson product in rank `p`, reduced when the determinant is central.
    fn fuse<'py>(&self, py: Python<'py>, lhs: Vec<usize>, rhs: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        let (p, e) = self.even()?;
        let dp = determinant_pair(&self.inner, p).map_err(err)?;
        let central = centrality(&dp, &mn_matrices(&self.inner, &dp)).central;
        let result = fuse(&partition(lhs)?, &partition(rhs)?, p, central).map_err(err)?;
        let dims = dim_check(&result, &e);
        let out = to_py(py, &result)?;
        out.set_item("dim_sum", dims.dim_sum.to_string())?;
        out.set_item("consistent", dims.consistent)?;
        Ok(out)
    }

    /// Casimir scalar on `V_λ` with `γ_λ` and both closed-form eigenvalues.
    fn casimir<'py>(&self, py: Python<'py>, lam: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        let (p, _) = self.even()?;
        to_py(py, &casimir_on_component(&self.inner, p, &partition(lam)?, &self.caps).map_err(err)?)
    }

    /// Roots of the induced symmetry on `V_λ` against the predicted weight multiset.
    fn conjecture_probe<'py>(&self, py: Python<'py>, lam: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &conjecture_probe(&self.inner, &partition(lam)?, &self.caps).map_err(err)?)
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    FIXTURE_NAMES.to_vec()
}

/// Rows `{l, lambda, eigenvalue, multiplicity}` of the hyperboloid spectrum.
#[pyfunction]
fn hyperboloid<'py>(py: Python<'py>, n: i64, levels: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &hyperboloid_spectrum(n, levels).map_err(err)?.rows)
}

/// `N(λ)`, the number of eigenvalues at most `lam` counted with multiplicity.
#[pyfunction]
fn count<'py>(py: Python<'py>, n: i64, levels: usize, lam: f64) -> PyResult<Bound<'py, PyAny>> {
    let table = hyperboloid_spectrum(n, levels).map_err(err)?;
    big_int(py, count_n(&table, lam).map_err(err)?.to_string())
}

/// Asymptotics of the counting function through level `levels`.
#[pyfunction]
fn weyl<'py>(py: Python<'py>, n: i64, levels: usize) -> PyResult<Bound<'py, PyAny>> {
    let table = hyperboloid_spectrum(n, levels + 1).map_err(err)?;
    to_py(py, &weyl_fit(&table, levels).map_err(err)?)
}

#[pymodule]
fn swlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySymmetry>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(hyperboloid, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(weyl, m)?)?;
    Ok(())
}
