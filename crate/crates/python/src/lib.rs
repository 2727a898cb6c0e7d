//! Python bindings for `ddfkit`, importable as `pyddfkit`.
//!
//! `-inf` distance values map to `float('-inf')`; structured reports are
//! returned as plain dicts (via their JSON serialisation). Every library error
//! raises `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use ddfkit::oracle::{self, GridSpec, JpfKind};
use ddfkit::quad_translation::seeded_homogeneity_witness;
use ddfkit::{
    Bundle, DProperty, DdfEvaluator, Direction, ExtendedValue, FrontierKind, Method, QuadraticSeparableParams,
    SampleConfig, Side, TechProperty, TechnologyKind,
};

fn err(e: ddfkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py_dict(py: Python<'_>, value: &impl Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn parse<T: std::str::FromStr<Err = ddfkit::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// A validated technology.
#[pyclass(frozen, module = "pyddfkit")]
struct Technology {
    inner: TechnologyKind,
}

impl Technology {
    fn checked(inner: TechnologyKind) -> PyResult<Self> {
        inner.validate().into_result().map_err(err)?;
        Ok(Self { inner })
    }
}

#[pymethods]
impl Technology {
    /// One of `figure4`, `staircase`, `polyhedral_a`, `polyhedral_b`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let inner = match name {
            "figure4" => TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4()),
            "staircase" => TechnologyKind::Staircase,
            "polyhedral_a" => TechnologyKind::PolyhedralA,
            "polyhedral_b" => TechnologyKind::PolyhedralB,
            other => return Err(PyValueError::new_err(format!("unknown builtin technology {other:?}"))),
        };
        Self::checked(inner)
    }

    /// Parses the CLI's technology JSON format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::checked(TechnologyKind::from_json(text).map_err(err)?)
    }

    /// The quadratic-separable technology `b'y + y'By/2 - a'x`.
    #[staticmethod]
    fn quadratic(b: Vec<f64>, a: Vec<f64>, bmat: Vec<Vec<f64>>) -> PyResult<Self> {
        let p = QuadraticSeparableParams::new(b, a, bmat).map_err(err)?;
        Self::checked(TechnologyKind::QuadraticSeparable(p))
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.name()
    }

    /// `(m, n)`: number of outputs and inputs.
    #[getter]
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    fn eval_f(&self, y: Vec<f64>, x: Vec<f64>) -> PyResult<f64> {
        self.inner.eval_f(&Bundle::new(y, x).map_err(err)?).map_err(err)
    }

    fn contains(&self, y: Vec<f64>, x: Vec<f64>) -> PyResult<bool> {
        self.inner.contains(&Bundle::new(y, x).map_err(err)?).map_err(err)
    }

    /// Membership of `point` in the `kind` frontier (`isoq`, `weff`, `eff`) of
    /// `P(fixed)` (`side='output'`) or `L(fixed)` (`side='input'`).
    fn frontier_member(&self, side: &str, fixed: Vec<f64>, point: Vec<f64>, kind: &str) -> PyResult<bool> {
        self.inner
            .frontier_member(parse::<Side>(side)?, &fixed, &point, parse::<FrontierKind>(kind)?)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Technology({})", self.to_json())
    }
}

/// DTDF value at `(y, x)` along `(gy, gx)`; `method` is `auto`, `closed` or `bisect`.
#[pyfunction]
#[pyo3(signature = (tech, y, x, gy, gx, method = "auto"))]
fn eval_ddf(tech: &Technology, y: Vec<f64>, x: Vec<f64>, gy: Vec<f64>, gx: Vec<f64>, method: &str) -> PyResult<f64> {
    let method: Method = parse(method)?;
    let bundle = Bundle::new(y, x).map_err(err)?;
    let dir = Direction::new(gy, gx).map_err(err)?;
    let ev = DdfEvaluator::new(&tech.inner).map_err(err)?;
    Ok(ev.evaluate(&bundle, &dir, method).map_err(err)?.value.to_f64())
}

/// Unsymmetric distance `t(i)` for the 0-based output index `i`.
#[pyfunction]
fn unsymmetric_t(tech: &Technology, i: usize, y: Vec<f64>, x: Vec<f64>) -> PyResult<f64> {
    let bundle = Bundle::new(y, x).map_err(err)?;
    Ok(ddfkit::unsymmetric_t(&tech.inner, i, &bundle).map_err(err)?.to_f64())
}

/// Grid-search oracle for the DTDF with the given `step`.
#[pyfunction]
#[pyo3(signature = (tech, y, x, gy, gx, step = 1e-4))]
fn grid_ddf(tech: &Technology, y: Vec<f64>, x: Vec<f64>, gy: Vec<f64>, gx: Vec<f64>, step: f64) -> PyResult<f64> {
    let bundle = Bundle::new(y, x).map_err(err)?;
    let dir = Direction::new(gy, gx).map_err(err)?;
    let value: ExtendedValue = oracle::grid_ddf(&tech.inner, &bundle, &dir, step).map_err(err)?;
    Ok(value.to_f64())
}

/// Samples a D1-D6 or technology property (`F1`, `T4`, ...) and returns its report.
#[pyfunction]
#[pyo3(signature = (tech, prop, samples = 200, seed = 0))]
fn check_property(py: Python<'_>, tech: &Technology, prop: &str, samples: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let config = SampleConfig::new(samples, seed);
    let report = match prop.parse::<DProperty>() {
        Ok(d) => ddfkit::check_property(&tech.inner, d, config),
        Err(_) => {
            let t: TechProperty = parse(prop)?;
            ddfkit::check_technology_property(&tech.inner, t, config)
        }
    }
    .map_err(err)?;
    to_py_dict(py, &report)
}

/// Grid check of the joint-production-frontier biconditional on the cube
/// `[lo, hi]^(m+n)` (outputs first). `kind` is `isoquant` or `efficient`.
#[pyfunction]
#[pyo3(signature = (tech, kind, lo = 0.0, hi = 2.0, step = 0.25))]
fn jpf_check(py: Python<'_>, tech: &Technology, kind: &str, lo: f64, hi: f64, step: f64) -> PyResult<Py<PyAny>> {
    let kind: JpfKind = parse(kind)?;
    let (m, n) = tech.inner.dims();
    let grid = GridSpec::cube(m + n, lo, hi, step).map_err(err)?;
    to_py_dict(py, &oracle::jpf_existence_check(&tech.inner, &grid, kind).map_err(err)?)
}

/// D2 counterexample for the translation-restricted quadratic with seeded
/// random free parameters; returns the witness as a dict.
#[pyfunction]
fn homogeneity_witness(py: Python<'_>, m: usize, n: usize, seed: u64) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &seeded_homogeneity_witness(m, n, seed).map_err(err)?)
}

#[pymodule]
fn pyddfkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Technology>()?;
    m.add_function(wrap_pyfunction!(eval_ddf, m)?)?;
    m.add_function(wrap_pyfunction!(unsymmetric_t, m)?)?;
    m.add_function(wrap_pyfunction!(grid_ddf, m)?)?;
    m.add_function(wrap_pyfunction!(check_property, m)?)?;
    m.add_function(wrap_pyfunction!(jpf_check, m)?)?;
    m.add_function(wrap_pyfunction!(homogeneity_witness, m)?)?;
    Ok(())
}
