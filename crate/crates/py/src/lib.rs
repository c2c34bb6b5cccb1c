//! Python bindings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use glab_core::chevalley::{self, SlMatrix};
use glab_core::cli::{self, parse_group_spec, parse_subset_spec, resolve_subset, CliError, TaskConfig};
use glab_core::group::{FiniteGroup, SubsetMask};
use glab_core::perm::Permutation as CorePerm;
use glab_core::roots::RootSystem;
use glab_core::thick;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite group with elements numbered from 0 (the identity).
#[pyclass(module = "glab", frozen)]
struct Group {
    inner: FiniteGroup,
}

impl Group {
    fn element(&self, x: &str) -> PyResult<u32> {
        self.inner.parse_element(x).map_err(err)
    }

    fn subset(&self, spec: &str) -> PyResult<SubsetMask> {
        let s = parse_subset_spec(spec).map_err(cli_err)?;
        resolve_subset(&self.inner, &s).map_err(cli_err)
    }
}

#[pymethods]
impl Group {
    /// Builds a group from text such as `SL(2,5)` or `Product(Alt(5),Sym(3))`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec = parse_group_spec(spec).map_err(cli_err)?;
        Ok(Group {
            inner: FiniteGroup::build(&spec).map_err(err)?,
        })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<String> {
        (0..self.inner.order() as u32).map(|x| self.inner.format(x)).collect()
    }

    fn mul(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self.inner.format(self.inner.mul(self.element(x)?, self.element(y)?)))
    }

    fn inverse(&self, x: &str) -> PyResult<String> {
        Ok(self.inner.format(self.inner.inverse(self.element(x)?)))
    }

    fn commutator(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self.inner.format(self.inner.commutator(self.element(x)?, self.element(y)?)))
    }

    fn element_order(&self, x: &str) -> PyResult<usize> {
        Ok(self.inner.element_order(self.element(x)?))
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.inner.classes().sizes()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn commutator_width(&self) -> usize {
        self.inner.commutator_width()
    }

    fn structure<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.structure_report().summary(&self.inner))
    }

    /// Elements of a subset spec such as `arc(1)` or `class((1,2,3))`.
    fn subset_elements(&self, spec: &str) -> PyResult<Vec<String>> {
        Ok(self.subset(spec)?.iter().map(|x| self.inner.format(x)).collect())
    }

    /// Least N for which the set is N-thick, or None when no N works.
    fn thickness(&self, spec: &str) -> PyResult<Option<usize>> {
        let r = thick::thickness(&self.inner, &self.subset(spec)?).map_err(err)?;
        Ok(r.value.finite())
    }

    #[pyo3(signature = (spec, cap=64))]
    fn power_cover(&self, spec: &str, cap: usize) -> PyResult<Option<usize>> {
        Ok(thick::power_cover(&self.inner, &self.subset(spec)?, cap).map_err(err)?.power)
    }

    fn gn_set(&self, n: usize) -> Vec<String> {
        thick::gn_set(&self.inner, n).iter().map(|x| self.inner.format(x)).collect()
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.inner.spec())
    }
}

/// Permutation of {1..n} in cycle notation.
#[pyclass(module = "glab", frozen, eq)]
#[derive(PartialEq)]
struct Permutation {
    inner: CorePerm,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(text: &str, n: usize) -> PyResult<Self> {
        Ok(Permutation {
            inner: CorePerm::parse(text, n).map_err(err)?,
        })
    }

    /// `(self * other)(x) = self(other(x))`.
    fn __mul__(&self, other: &Permutation) -> PyResult<Permutation> {
        if self.inner.degree() != other.inner.degree() {
            return Err(PyValueError::new_err("degrees differ"));
        }
        Ok(Permutation {
            inner: self.inner.compose(&other.inner),
        })
    }

    fn inverse(&self) -> Permutation {
        Permutation {
            inner: self.inner.inverse(),
        }
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.inner.cycle_type()
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?}, {})", self.inner.to_string(), self.inner.degree())
    }
}

/// `(x,a…)⁻¹(x,b…)`, raising if it differs from `(x,b…,reversed a)`.
#[pyfunction]
fn cycle_quotient(x: u32, a: Vec<u32>, b: Vec<u32>) -> PyResult<String> {
    Ok(glab_core::perm::cycle_quotient(x, &a, &b).map_err(err)?.to_string())
}

#[pyfunction]
fn odd_cycle_merge(x: u32, y: u32, a: Vec<u32>, b: Vec<u32>) -> PyResult<String> {
    Ok(glab_core::perm::odd_cycle_merge(x, y, &a, &b).map_err(err)?.to_string())
}

#[pyfunction]
fn lambda_weights(system: &str) -> PyResult<Vec<i64>> {
    Ok(system.parse::<RootSystem>().map_err(err)?.lambda_weights())
}

#[pyfunction]
fn is_regular(diagonal: Vec<u32>, p: u32) -> PyResult<bool> {
    let t = SlMatrix::diagonal(p, &diagonal).map_err(err)?;
    chevalley::is_regular(&t).map_err(err)
}

/// Solves `[t,u'] = u` and returns u' as row-major residues.
#[pyfunction]
fn transport_solve(diagonal: Vec<u32>, u: &str, p: u32) -> PyResult<Vec<u32>> {
    let t = SlMatrix::diagonal(p, &diagonal).map_err(err)?;
    let u = SlMatrix::parse(u, p).map_err(err)?;
    Ok(chevalley::commutator_transport_solve(&t, &u).map_err(err)?.entries().to_vec())
}

#[pyfunction]
fn verify_relations<'py>(py: Python<'py>, n: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    let suite = py.detach(|| chevalley::verify_relations(n, p)).map_err(err)?;
    to_py(py, &suite)
}

/// Runs a task from `key=value` config text and returns the report as a dict.
#[pyfunction]
fn run_task<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg = TaskConfig::parse(config).map_err(cli_err)?;
    let report = py.detach(|| cli::run(&cfg)).map_err(cli_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn task_names() -> Vec<&'static str> {
    cli::TASKS.iter().map(|t| t.name).collect()
}

#[pymodule]
fn glab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", cli::TOOLKIT_VERSION)?;
    m.add_class::<Group>()?;
    m.add_class::<Permutation>()?;
    m.add_function(wrap_pyfunction!(cycle_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(odd_cycle_merge, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_weights, m)?)?;
    m.add_function(wrap_pyfunction!(is_regular, m)?)?;
    m.add_function(wrap_pyfunction!(transport_solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations, m)?)?;
    m.add_function(wrap_pyfunction!(run_task, m)?)?;
    m.add_function(wrap_pyfunction!(task_names, m)?)?;
    Ok(())
}
