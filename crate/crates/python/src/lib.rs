//! Python bindings: `import qdis`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qdis_core::channels;
use qdis_core::cloning::{self, CloningMode, MinCopies, Rational};
use qdis_core::factory::{self as core_factory, StateSpec};
use qdis_core::geometry::{self, CorrelationProfile};
use qdis_core::ideal::{self, DisentanglementReport};
use qdis_core::separability::{self, SeparabilityVerdict};
use qdis_core::state::DEFAULT_TOL;
use qdis_core::{ComplexMatrix, QubitState, Subsystem};

fn value_error(e: qdis_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
}

/// Validated 4×4 density matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
#[pyclass(frozen, skip_from_py_object, name = "TwoQubitState", module = "qdis")]
#[derive(Clone)]
pub struct PyTwoQubitState {
    inner: qdis_core::TwoQubitState,
}

#[pymethods]
impl PyTwoQubitState {
    #[new]
    #[pyo3(signature = (matrix, tol = DEFAULT_TOL))]
    fn new(matrix: Vec<Vec<Complex64>>, tol: f64) -> PyResult<Self> {
        let m = ComplexMatrix::from_rows(&matrix).map_err(value_error)?;
        let inner = qdis_core::TwoQubitState::with_tol(m, tol).map_err(value_error)?;
        Ok(PyTwoQubitState { inner })
    }

    /// Rows of complex entries.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.matrix())
    }

    /// Ascending spectrum.
    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    /// Reduced state of qubit `keep` (0 for A, 1 for B) as a 2×2 matrix.
    fn reduced(&self, keep: usize) -> PyResult<Vec<Vec<Complex64>>> {
        let side = match keep {
            0 => Subsystem::First,
            1 => Subsystem::Second,
            _ => return Err(PyValueError::new_err("keep must be 0 or 1")),
        };
        Ok(rows(self.inner.reduced(side).matrix()))
    }

    fn __repr__(&self) -> String {
        format!("TwoQubitState({:?})", self.inner.eigenvalues())
    }
}

impl From<qdis_core::TwoQubitState> for PyTwoQubitState {
    fn from(inner: qdis_core::TwoQubitState) -> Self {
        PyTwoQubitState { inner }
    }
}

fn profile_dict<'py>(py: Python<'py>, p: &CorrelationProfile) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("m", p.m.to_vec())?;
    d.set_item("t_canonical", p.t_canonical.to_vec())?;
    d.set_item("N", p.n)?;
    d.set_item("f", p.f)?;
    d.set_item("Ic", p.ic)?;
    d.set_item("region", p.region.as_str())?;
    Ok(d)
}

fn verdict_dict<'py>(py: Python<'py>, v: &SeparabilityVerdict) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("verdict", v.verdict.as_str())?;
    d.set_item("min_pt_eigenvalue", v.min_pt_eigenvalue)?;
    d.set_item("negativity_margin", v.negativity_margin)?;
    Ok(d)
}

fn qubit_rows(q: &QubitState) -> Vec<Vec<Complex64>> {
    rows(q.matrix())
}

fn report_dict<'py>(py: Python<'py>, r: &DisentanglementReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("reduced_a_delta", r.reduced_a_delta)?;
    d.set_item("reduced_b_delta", r.reduced_b_delta)?;
    d.set_item("verdict", verdict_dict(py, &r.verdict)?)?;
    d.set_item("ic_before", r.ic_before)?;
    d.set_item("ic_after", r.ic_after)?;
    let terms: Vec<(f64, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>)> = r
        .product_weights
        .iter()
        .map(|t| (t.weight, qubit_rows(&t.a), qubit_rows(&t.b)))
        .collect();
    d.set_item("product_terms", terms)?;
    Ok(d)
}

fn fraction<'py>(py: Python<'py>, q: Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*q.numer(), *q.denom()))
}

fn parse_mode(mode: &str) -> PyResult<CloningMode> {
    CloningMode::ALL
        .into_iter()
        .find(|m| m.as_str() == mode)
        .ok_or_else(|| PyValueError::new_err(format!("unknown cloning mode {mode:?}")))
}

/// Build a state from its text form, e.g. `"schmidt:0.7854"` or `"pure:42"`.
#[pyfunction]
fn make_state(spec: &str) -> PyResult<PyTwoQubitState> {
    let spec: StateSpec = spec.parse().map_err(value_error)?;
    Ok(core_factory::make_state(&spec).map_err(value_error)?.into())
}

/// Pauli coefficients as a dict with keys r, s and t.
#[pyfunction]
fn decompose<'py>(py: Python<'py>, state: &PyTwoQubitState) -> PyResult<Bound<'py, PyDict>> {
    let dec = geometry::decompose(&state.inner).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("r", dec.r.to_vec())?;
    d.set_item("s", dec.s.to_vec())?;
    d.set_item("t", dec.t.iter().map(|row| row.to_vec()).collect::<Vec<_>>())?;
    Ok(d)
}

#[pyfunction]
fn profile<'py>(py: Python<'py>, state: &PyTwoQubitState) -> PyResult<Bound<'py, PyDict>> {
    profile_dict(py, &geometry::profile(&state.inner).map_err(value_error)?)
}

#[pyfunction]
fn ppt_verdict<'py>(py: Python<'py>, state: &PyTwoQubitState) -> PyResult<Bound<'py, PyDict>> {
    verdict_dict(py, &separability::ppt_verdict(&state.inner))
}

#[pyfunction]
fn apply_isotropic(state: &PyTwoQubitState, eta1: f64, eta2: f64) -> PyResult<PyTwoQubitState> {
    Ok(channels::apply_isotropic(&state.inner, eta1, eta2).map_err(value_error)?.into())
}

#[pyfunction]
fn analytic_ppt_margin(theta: f64, eta1: f64, eta2: f64) -> f64 {
    channels::analytic_ppt_margin(theta, eta1, eta2)
}

#[pyfunction]
fn threshold_ok(eta1: f64, eta2: f64) -> bool {
    channels::threshold_ok(eta1, eta2)
}

#[pyfunction]
fn quality_factor(eta1: f64, eta2: f64) -> f64 {
    channels::quality_factor(eta1, eta2)
}

/// Dephase qubit B in the eigenbasis of its reduced state. Returns
/// `(output_state, report)`.
#[pyfunction]
fn dephase_disentangle<'py>(
    py: Python<'py>,
    state: &PyTwoQubitState,
) -> PyResult<(PyTwoQubitState, Bound<'py, PyDict>)> {
    let (out, report) = ideal::dephase_disentangle(&state.inner, None).map_err(value_error)?;
    Ok((out.into(), report_dict(py, &report)?))
}

/// Reduction factor of a 1→M cloner as a `fractions.Fraction`.
#[pyfunction]
fn clone_eta<'py>(py: Python<'py>, mode: &str, m: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, cloning::clone_eta(parse_mode(mode)?, m).map_err(value_error)?)
}

#[pyfunction]
fn net_shrink<'py>(py: Python<'py>, mode: &str, m: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, cloning::net_shrink(parse_mode(mode)?, m).map_err(value_error)?)
}

/// Smallest M that disentangles every state, or None when no M does.
#[pyfunction]
fn min_copies(mode: &str) -> PyResult<Option<i64>> {
    Ok(match cloning::min_copies(parse_mode(mode)?) {
        MinCopies::Copies(m) => Some(m),
        MinCopies::Unattainable { .. } => None,
    })
}

#[pyfunction]
fn bell_diag_eof(f: f64) -> PyResult<f64> {
    geometry::bell_diag_eof(f).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (state, budget = geometry::FEF_DEFAULT_BUDGET))]
fn fef_direct(state: &PyTwoQubitState, budget: usize) -> f64 {
    geometry::fef_direct(&state.inner, budget)
}

#[pymodule]
fn qdis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTwoQubitState>()?;
    m.add_function(wrap_pyfunction!(make_state, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(ppt_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(apply_isotropic, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_ppt_margin, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_ok, m)?)?;
    m.add_function(wrap_pyfunction!(quality_factor, m)?)?;
    m.add_function(wrap_pyfunction!(dephase_disentangle, m)?)?;
    m.add_function(wrap_pyfunction!(clone_eta, m)?)?;
    m.add_function(wrap_pyfunction!(net_shrink, m)?)?;
    m.add_function(wrap_pyfunction!(min_copies, m)?)?;
    m.add_function(wrap_pyfunction!(bell_diag_eof, m)?)?;
    m.add_function(wrap_pyfunction!(fef_direct, m)?)?;
    m.add("PPT_TOL", separability::PPT_TOL)?;
    Ok(())
}
