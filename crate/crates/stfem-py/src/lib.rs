//! Python bindings: quadrature and Legendre evaluation, the
//! manufactured-solution registry, single solves with error measurement,
//! refinement studies (returned as JSON reports), and the identity suite.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use stfem::analysis::NormKind;
use stfem::harness::{report_to_json, run_study, RefineAxis, StudyConfig};
use stfem::methods::Scheme;
use stfem::temporal::QuadratureRule;

fn parse_scheme(method: &str) -> PyResult<Scheme> {
    Scheme::parse(method)
        .ok_or_else(|| PyValueError::new_err(format!("unknown method `{method}`")))
}

fn parse_norms(norms: Vec<String>) -> PyResult<Vec<NormKind>> {
    norms
        .iter()
        .map(|n| {
            NormKind::parse(n).ok_or_else(|| PyValueError::new_err(format!("unknown norm `{n}`")))
        })
        .collect()
}

#[pyfunction]
fn version() -> &'static str {
    stfem::version()
}

/// Legendre polynomial value P_i(x) on the reference interval.
#[pyfunction]
fn legendre(i: usize, x: f64) -> f64 {
    stfem::temporal::legendre(i, x)
}

/// Left-sided Gauss-Radau rule with q+1 nodes on [-1, 1].
#[pyfunction]
fn gauss_radau_left(q: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = QuadratureRule::gauss_radau_left(q);
    (rule.nodes().to_vec(), rule.weights().to_vec())
}

/// Gauss-Legendre rule with m nodes on [-1, 1].
#[pyfunction]
fn gauss_legendre(m: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(PyValueError::new_err("need at least one point"));
    }
    let rule = QuadratureRule::gauss_legendre(m);
    Ok((rule.nodes().to_vec(), rule.weights().to_vec()))
}

/// Registered manufactured solutions as (id, description) pairs.
#[pyfunction]
fn list_solutions() -> Vec<(String, String)> {
    stfem::harness::list_solutions()
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    method: &str,
    solution: &str,
    q: usize,
    p: usize,
    elements: usize,
    slabs: usize,
    t_end: f64,
    nu: f64,
    c: f64,
    delta: f64,
    cfl_override: bool,
    norms: Vec<String>,
) -> PyResult<StudyConfig> {
    let scheme = parse_scheme(method)?;
    let mut config = StudyConfig::new(scheme, solution);
    config.q = q;
    config.p = p;
    config.elements = elements;
    config.slabs = slabs;
    config.t_end = t_end;
    config.nu = nu;
    config.c = c;
    config.delta = delta;
    config.cfl_override = cfl_override;
    config.norms = parse_norms(norms)?;
    Ok(config)
}

/// Solves one configuration and returns a dict with errors, the maximum slab
/// residual, and the CFL margin (when the scheme carries one).
#[pyfunction]
#[pyo3(signature = (method, solution, q, p, elements, slabs, t_end,
                    nu = 1.0, c = 1.0, delta = 0.0, cfl_override = false,
                    norms = vec!["linf-l2".into()]))]
#[allow(clippy::too_many_arguments)]
fn solve<'py>(
    py: Python<'py>,
    method: &str,
    solution: &str,
    q: usize,
    p: usize,
    elements: usize,
    slabs: usize,
    t_end: f64,
    nu: f64,
    c: f64,
    delta: f64,
    cfl_override: bool,
    norms: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let config = build_config(
        method,
        solution,
        q,
        p,
        elements,
        slabs,
        t_end,
        nu,
        c,
        delta,
        cfl_override,
        norms,
    )?;
    let report = run_study(&config).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let level = &report.levels[0];
    let out = PyDict::new(py);
    let errors = PyDict::new(py);
    for e in &level.errors {
        errors.set_item(&e.norm, e.value)?;
    }
    out.set_item("errors", errors)?;
    out.set_item("max_slab_residual", level.max_slab_residual)?;
    out.set_item("cfl_margin", level.cfl_margin)?;
    out.set_item("wall_seconds", level.wall_seconds)?;
    Ok(out)
}

/// Runs a tau or h refinement study and returns the full report as a JSON
/// string.
#[pyfunction]
#[pyo3(signature = (method, solution, q, p, elements, slabs, t_end, refine, levels,
                    nu = 1.0, c = 1.0, delta = 0.0, cfl_override = false,
                    norms = vec!["linf-l2".into()]))]
#[allow(clippy::too_many_arguments)]
fn run_study_json(
    method: &str,
    solution: &str,
    q: usize,
    p: usize,
    elements: usize,
    slabs: usize,
    t_end: f64,
    refine: &str,
    levels: usize,
    nu: f64,
    c: f64,
    delta: f64,
    cfl_override: bool,
    norms: Vec<String>,
) -> PyResult<String> {
    let mut config = build_config(
        method,
        solution,
        q,
        p,
        elements,
        slabs,
        t_end,
        nu,
        c,
        delta,
        cfl_override,
        norms,
    )?;
    config.refine = RefineAxis::parse(refine)
        .ok_or_else(|| PyValueError::new_err(format!("unknown refine axis `{refine}`")))?;
    config.levels = levels;
    let report = run_study(&config).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    report_to_json(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Runs the algebraic identity suite; returns a list of dicts with
/// id, name, passed, and the measured defect.
#[pyfunction]
fn verify(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let mut out = Vec::new();
    for check in stfem::verify::run_identity_suite() {
        let d = PyDict::new(py);
        d.set_item("id", check.id)?;
        d.set_item("name", check.name)?;
        d.set_item("passed", check.passed)?;
        d.set_item("defect", check.worst)?;
        d.set_item("threshold", check.threshold)?;
        out.push(d);
    }
    Ok(out)
}

#[pymodule]
fn stfem_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(legendre, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_radau_left, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_legendre, m)?)?;
    m.add_function(wrap_pyfunction!(list_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(run_study_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
