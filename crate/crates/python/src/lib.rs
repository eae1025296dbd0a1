//! Python bindings: ions, per-configuration analyses, entropy reports and
//! the acceptance suite.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hylleraas_entropy::acceptance;
use hylleraas_entropy::observables::{
    self, bbm_bound, entropy_density, shannon_entropy, EntropyReport, Space,
};
use hylleraas_entropy::quadrature::QuadratureSpec;
use hylleraas_entropy::wavefunction::{IonSpec, Mode};
use hylleraas_entropy::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Quadrature { .. } | Error::NonFiniteIntegrand { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(PyValueError::new_err)
}

fn parse_space(space: &str) -> PyResult<Space> {
    space.parse().map_err(PyValueError::new_err)
}

fn quadrature(rel_tol: Option<f64>) -> PyResult<QuadratureSpec> {
    match rel_tol {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(PyValueError::new_err(format!(
            "rel_tol must be > 0, got {t}"
        ))),
        Some(t) => Ok(QuadratureSpec::default().with_rel_tol(t)),
        None => Ok(QuadratureSpec::default()),
    }
}

/// A two-electron ion: nuclear charge `z` and wave-function parameters `a`, `b`.
#[pyclass(name = "Ion", frozen, from_py_object)]
#[derive(Clone)]
struct PyIon(IonSpec);

#[pymethods]
impl PyIon {
    #[new]
    #[pyo3(signature = (z, a, b, name = "custom".to_string()))]
    fn new(z: u32, a: f64, b: f64, name: String) -> PyResult<Self> {
        IonSpec::new(name, z, a, b).map(Self).map_err(py_err)
    }

    /// Registry ion by name (`"H-"`, `"He"`, `"Li+"`, `"Be2+"`, `"B3+"` and aliases).
    #[staticmethod]
    fn lookup(name: &str) -> PyResult<Self> {
        IonSpec::lookup(name).map(Self).map_err(py_err)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    #[getter]
    fn z(&self) -> u32 {
        self.0.z
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    fn __repr__(&self) -> String {
        format!(
            "Ion(name={:?}, z={}, a={}, b={})",
            self.0.name, self.0.z, self.0.a, self.0.b
        )
    }
}

#[derive(FromPyObject)]
enum IonArg {
    Ion(PyIon),
    Name(String),
}

impl IonArg {
    fn resolve(self) -> PyResult<IonSpec> {
        match self {
            IonArg::Ion(ion) => Ok(ion.0),
            IonArg::Name(name) => IonSpec::lookup(&name).map_err(py_err),
        }
    }
}

fn report_dict<'py>(py: Python<'py>, r: &EntropyReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("ion", &r.ion)?;
    d.set_item("z", r.z)?;
    d.set_item("a", r.a)?;
    d.set_item("b", r.b)?;
    d.set_item("mode", r.mode.as_str())?;
    d.set_item("s_rho", r.s_rho)?;
    d.set_item("s_gamma", r.s_gamma)?;
    d.set_item("sum", r.sum)?;
    d.set_item("bbm_margin", r.bbm_margin)?;
    Ok(d)
}

/// Normalized position and momentum densities of one ion in one mode.
#[pyclass(name = "Analysis", frozen)]
struct PyAnalysis {
    inner: observables::Analysis,
    spec: QuadratureSpec,
}

#[pymethods]
impl PyAnalysis {
    #[new]
    #[pyo3(signature = (ion, mode = "correlated", rel_tol = None))]
    fn new(ion: IonArg, mode: &str, rel_tol: Option<f64>) -> PyResult<Self> {
        let ion = ion.resolve()?;
        let spec = quadrature(rel_tol)?;
        let inner = observables::Analysis::new(&ion, parse_mode(mode)?, &spec).map_err(py_err)?;
        Ok(Self { inner, spec })
    }

    #[getter]
    fn ion(&self) -> PyIon {
        PyIon(self.inner.wavefunction.ion.clone())
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.wavefunction.mode.as_str()
    }

    /// Number of terms in the reduced position-space wave function.
    #[getter]
    fn term_count(&self) -> usize {
        self.inner.wavefunction.body.len()
    }

    /// `ρ(x)` or `γ(x)`.
    #[pyo3(signature = (x, space = "position"))]
    fn density(&self, x: f64, space: &str) -> PyResult<f64> {
        Ok(self.inner.profile(parse_space(space)?).density(x))
    }

    /// `4π x² d(x)`.
    #[pyo3(signature = (x, space = "position"))]
    fn radial_density(&self, x: f64, space: &str) -> PyResult<f64> {
        Ok(self.inner.profile(parse_space(space)?).radial_density(x))
    }

    /// `−4π x² d(x) ln d(x)`.
    #[pyo3(signature = (x, space = "position"))]
    fn entropy_density(&self, x: f64, space: &str) -> PyResult<f64> {
        Ok(entropy_density(self.inner.profile(parse_space(space)?), x))
    }

    /// `(x, 4πx²d, −4πx²d ln d)` for each grid point.
    #[pyo3(signature = (xs, space = "position"))]
    fn profile(&self, xs: Vec<f64>, space: &str) -> PyResult<Vec<(f64, f64, f64)>> {
        let d = self.inner.profile(parse_space(space)?);
        Ok(xs
            .into_iter()
            .map(|x| (x, d.radial_density(x), entropy_density(d, x)))
            .collect())
    }

    /// Shannon entropy of one density, in nats.
    #[pyo3(signature = (space = "position"))]
    fn entropy(&self, py: Python<'_>, space: &str) -> PyResult<f64> {
        let d = self.inner.profile(parse_space(space)?);
        py.detach(|| shannon_entropy(d, &self.spec)).map_err(py_err)
    }

    /// `(ρ(0), γ(0))`.
    fn origin_values(&self) -> (f64, f64) {
        (
            self.inner.position.density(0.0),
            self.inner.momentum.density(0.0),
        )
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = py
            .detach(|| self.inner.report(&self.spec))
            .map_err(py_err)?;
        report_dict(py, &r)
    }

    fn __repr__(&self) -> String {
        format!(
            "Analysis(ion={:?}, mode={:?})",
            self.inner.wavefunction.ion.name,
            self.mode()
        )
    }
}

/// The five registry ions.
#[pyfunction]
fn registry() -> Vec<PyIon> {
    IonSpec::registry().into_iter().map(PyIon).collect()
}

/// Entropy report for one ion and mode as a dict.
#[pyfunction]
#[pyo3(name = "report", signature = (ion, mode = "correlated", rel_tol = None))]
fn py_report<'py>(
    py: Python<'py>,
    ion: IonArg,
    mode: &str,
    rel_tol: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let ion = ion.resolve()?;
    let (mode, spec) = (parse_mode(mode)?, quadrature(rel_tol)?);
    let r = py
        .detach(|| observables::report(&ion, mode, &spec))
        .map_err(py_err)?;
    report_dict(py, &r)
}

/// `3(1 + ln π)`.
#[pyfunction(name = "bbm_bound")]
fn py_bbm_bound() -> f64 {
    bbm_bound()
}

/// `(id, title, passed, failing check labels)`
type CriterionSummary = (u8, String, bool, Vec<String>);

/// Runs the acceptance suite.
#[pyfunction]
fn run_acceptance(py: Python<'_>) -> PyResult<Vec<CriterionSummary>> {
    let criteria = py
        .detach(|| acceptance::run_all(QuadratureSpec::default()))
        .map_err(py_err)?;
    Ok(criteria
        .iter()
        .map(|c| {
            (
                c.id,
                c.title.to_string(),
                c.passed(),
                c.failures().map(|f| f.label.clone()).collect(),
            )
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "hylleraas_entropy")]
fn hylleraas_entropy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIon>()?;
    m.add_class::<PyAnalysis>()?;
    m.add_function(wrap_pyfunction!(registry, m)?)?;
    m.add_function(wrap_pyfunction!(py_report, m)?)?;
    m.add_function(wrap_pyfunction!(py_bbm_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_acceptance, m)?)?;
    Ok(())
}
