//! Python bindings. Everything crosses the boundary as JSON text with
//! rationals as "p/q" strings, so nothing is ever rounded.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use formdual::catalog;
use formdual::spectral::perfectness;
use formdual::{build_duality_operator, spectrum, KForm};

fn err(e: formdual::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Names of the catalog forms.
#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::NAMES.to_vec()
}

/// KForm JSON of a catalog form.
#[pyfunction]
fn form_json(name: &str) -> PyResult<String> {
    Ok(catalog::lookup(name).map_err(err)?.form.to_json_string())
}

/// b_Omega on Lambda^k as sparse triplet JSON.
#[pyfunction]
fn operator_json(name: &str, k: usize) -> PyResult<String> {
    let entry = catalog::lookup(name).map_err(err)?;
    let d = build_duality_operator(&entry.form, name, k).map_err(err)?;
    Ok(d.op.to_json_string())
}

/// Spectral report of b_Omega on Lambda^k.
#[pyfunction]
fn spectrum_json(py: Python<'_>, name: &str, k: usize) -> PyResult<String> {
    let entry = catalog::lookup(name).map_err(err)?;
    let report = py
        .detach(|| {
            let d = build_duality_operator(&entry.form, &format!("b_{name} k={k}"), k)?;
            let mut r = spectrum(&d.op, None)?;
            if let Some(n) = formdual::verify::irreducible_count(name, k) {
                perfectness(&mut r, n);
            }
            Ok(r)
        })
        .map_err(err)?;
    Ok(pretty(&report.to_json()))
}

/// Applies b_Omega of a catalog form to a KForm given as JSON.
#[pyfunction]
fn apply(name: &str, form: &str) -> PyResult<String> {
    let omega = catalog::lookup(name).map_err(err)?.form;
    let f = KForm::from_json_str(form).map_err(err)?;
    let d = build_duality_operator(&omega, name, f.degree()).map_err(err)?;
    Ok(d.apply(&f).map_err(err)?.to_json_string())
}

/// Z_8 analysis on Lambda^k R^8.
#[pyfunction]
fn z8_json(py: Python<'_>, k: usize) -> PyResult<String> {
    let a = py.detach(|| formdual::symmetry::z8_analysis(k)).map_err(err)?;
    Ok(pretty(&a.to_json()))
}

/// Runs a verification suite; returns `(passed, report_json)`.
#[pyfunction]
fn verify(py: Python<'_>, suite: &str) -> PyResult<(bool, String)> {
    let outcome = py.detach(|| formdual::verify::run_suite(suite)).map_err(err)?;
    Ok((outcome.passed(), pretty(&outcome.to_json())))
}

#[pymodule]
fn pyformdual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(form_json, m)?)?;
    m.add_function(wrap_pyfunction!(operator_json, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_json, m)?)?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(z8_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
