//! Python bindings. Shapes are strings like `"2,1"` and tableaux use the
//! `"1,1/2"` row notation throughout.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use crystal_pop::classifier::{certificate_for, classification_sweep, predict_lattice};
use crystal_pop::crystal::{default_vertex_cap, generate_crystal_capped};
use crystal_pop::poset::is_lattice as brute_is_lattice;
use crystal_pop::pop::{orbit, orbit_lengths as crystal_orbit_lengths, permutation_orbit, pop_permutation};
use crystal_pop::{export, CrystalGraph, Partition, Permutation, ReachabilityIndex};

fn py_err(e: crystal_pop::Error) -> PyErr {
    if e.is_invalid_input() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn build(shape: &str, n: usize, cap: Option<usize>) -> PyResult<CrystalGraph> {
    let lambda = Partition::parse(shape, n).map_err(py_err)?;
    generate_crystal_capped(&lambda, cap.unwrap_or_else(default_vertex_cap)).map_err(py_err)
}

/// Number of vertices of B_λ^n from the hook-content formula.
#[pyfunction]
pub fn crystal_size(shape: &str, n: usize) -> PyResult<u128> {
    Ok(Partition::parse(shape, n).map_err(py_err)?.hook_content_count())
}

/// The crystal as a JSON string with `vertices` and colored `edges`.
#[pyfunction]
#[pyo3(signature = (shape, n, cap=None))]
pub fn generate(shape: &str, n: usize, cap: Option<usize>) -> PyResult<String> {
    Ok(export::crystal_json(&build(shape, n, cap)?).to_string())
}

/// Orbit length of every vertex, indexed like `generate`.
#[pyfunction]
#[pyo3(signature = (shape, n, cap=None))]
pub fn orbit_lengths(shape: &str, n: usize, cap: Option<usize>) -> PyResult<Vec<usize>> {
    Ok(crystal_orbit_lengths(&build(shape, n, cap)?))
}

/// Iterates of Pop starting at `element` until the fixed point.
#[pyfunction]
#[pyo3(signature = (shape, n, element, cap=None))]
pub fn pop_trajectory(shape: &str, n: usize, element: &str, cap: Option<usize>) -> PyResult<Vec<String>> {
    let b = build(shape, n, cap)?;
    let start = b.find(element).map_err(py_err)?;
    let o = orbit(&b, start).map_err(py_err)?;
    Ok(o.trajectory.iter().map(|&v| b.tableau(v).to_string()).collect())
}

/// One pop-stack sorting step on a permutation in one-line notation.
#[pyfunction]
pub fn perm_pop(element: &str) -> PyResult<String> {
    let w = Permutation::parse(element).map_err(py_err)?;
    Ok(pop_permutation(&w).to_string())
}

#[pyfunction]
pub fn perm_orbit(element: &str) -> PyResult<Vec<String>> {
    let w = Permutation::parse(element).map_err(py_err)?;
    Ok(permutation_orbit(&w).iter().map(|x| x.to_string()).collect())
}

/// Brute-force lattice test.
#[pyfunction]
#[pyo3(signature = (shape, n, cap=None))]
pub fn is_lattice(shape: &str, n: usize, cap: Option<usize>) -> PyResult<bool> {
    let b = build(shape, n, cap)?;
    let index = ReachabilityIndex::build(&b);
    Ok(brute_is_lattice(&b, &index).is_lattice)
}

/// `(predicted, clause)` from the classification, without building anything.
#[pyfunction]
pub fn predict(shape: &str, n: usize) -> PyResult<(bool, Option<String>)> {
    let p = predict_lattice(&Partition::parse(shape, n).map_err(py_err)?);
    Ok((p.is_lattice_predicted, p.matched_clause.map(|c| c.to_string())))
}

/// JSON witness that B_λ^n is not a lattice, or None.
#[pyfunction]
#[pyo3(signature = (shape, n, cap=None))]
pub fn certificate(shape: &str, n: usize, cap: Option<usize>) -> PyResult<Option<String>> {
    let lambda = Partition::parse(shape, n).map_err(py_err)?;
    let c = certificate_for(&lambda, cap.unwrap_or_else(default_vertex_cap)).map_err(py_err)?;
    Ok(c.map(|c| export::certificate_json(&c).to_string()))
}

/// Rows `(lambda, n, predicted, brute_force, clause)` for every shape in range.
#[pyfunction]
#[pyo3(signature = (max_n, max_cells, cap=None, jobs=0))]
fn classify(
    py: Python<'_>,
    max_n: usize,
    max_cells: usize,
    cap: Option<usize>,
    jobs: usize,
) -> PyResult<Vec<(String, usize, bool, bool, Option<String>)>> {
    let cap = cap.unwrap_or_else(default_vertex_cap);
    let report = py
        .detach(|| classification_sweep(max_n, max_cells, cap, jobs))
        .map_err(py_err)?;
    Ok(report
        .rows
        .into_iter()
        .map(|r| (r.lambda, r.n, r.predicted, r.brute_force, r.clause.map(|c| c.to_string())))
        .collect())
}

#[pymodule]
#[pyo3(name = "crystal_pop")]
fn crystal_pop_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(crystal_size, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(pop_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(perm_pop, m)?)?;
    m.add_function(wrap_pyfunction!(perm_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(is_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
