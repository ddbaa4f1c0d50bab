//! Python module `eternal_domination`.
//!
//! Variants are passed as strings (`"domination"`, `"roman"`, `"italian"`)
//! plus a `connected` flag. Structured results come back as plain dicts.

use eternal_core::io::{emit_graph, parse_graph};
use eternal_core::{
    self as core, GridAttacker, GridKind, Kind, PatrolState, SolverOptions, Variant,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::Budget { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn variant(name: &str, connected: bool) -> PyResult<Variant> {
    let kind: Kind = name.parse().map_err(PyValueError::new_err)?;
    Ok(Variant::new(kind, connected))
}

fn options(stacking: bool, budget: Option<u128>) -> SolverOptions {
    let mut o = SolverOptions {
        stacking,
        ..SolverOptions::default()
    };
    if let Some(b) = budget {
        o.budget = b;
    }
    o
}

/// Round-trips a serializable value through JSON into Python objects.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(
    name = "Graph",
    module = "eternal_domination",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyGraph {
    inner: core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(n, &edges)
            .map(|inner| PyGraph { inner })
            .map_err(err)
    }

    /// Parses the `p ed` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_graph(text)
            .map(|inner| PyGraph { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph {
            inner: core::Graph::path(n),
        }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph {
            inner: core::Graph::cycle(n),
        }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: core::Graph::complete(n),
        }
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        PyGraph {
            inner: core::Graph::star(leaves),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn to_text(&self) -> String {
        emit_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

// Vec<u8> would cross over as `bytes`
fn counts(c: &[u8]) -> Vec<u32> {
    c.iter().map(|&x| x as u32).collect()
}

/// Minimum static weight and the first witness found, as per-vertex counts.
#[pyfunction]
#[pyo3(signature = (graph, variant_name = "domination", connected = false))]
fn static_number(
    graph: &PyGraph,
    variant_name: &str,
    connected: bool,
) -> PyResult<(u32, Vec<u32>)> {
    let r = core::static_number(&graph.inner, variant(variant_name, connected)?).map_err(err)?;
    Ok((r.weight, counts(r.witness.counts())))
}

/// Exact eternal number, or `None` when no budget up to `max_k` wins.
#[pyfunction]
#[pyo3(signature = (graph, variant_name = "domination", connected = false, max_k = None, stacking = true, budget = None))]
fn eternal_number(
    py: Python<'_>,
    graph: &PyGraph,
    variant_name: &str,
    connected: bool,
    max_k: Option<u32>,
    stacking: bool,
    budget: Option<u128>,
) -> PyResult<Option<u32>> {
    let v = variant(variant_name, connected)?;
    let g = graph.inner.clone();
    let opts = options(stacking, budget);
    py.detach(move || {
        let k_max = match max_k {
            Some(k) => k,
            None => core::strategy_upper_bound(&g, v.kind)?,
        };
        core::eternal_number(&g, v, k_max, &opts).map(|r| r.value)
    })
    .map_err(err)
}

/// Surviving configurations with `k` guards (empty when the attacker wins).
#[pyfunction]
#[pyo3(signature = (graph, k, variant_name = "domination", connected = false, stacking = true, budget = None))]
fn safe_family(
    py: Python<'_>,
    graph: &PyGraph,
    k: u32,
    variant_name: &str,
    connected: bool,
    stacking: bool,
    budget: Option<u128>,
) -> PyResult<Vec<Vec<u32>>> {
    let v = variant(variant_name, connected)?;
    let g = graph.inner.clone();
    let opts = options(stacking, budget);
    let fam = py
        .detach(move || core::safe_family(&g, v, k, &opts))
        .map_err(err)?;
    Ok(fam.configs.iter().map(|c| counts(c.counts())).collect())
}

/// Target graph of a hardness gadget (`"t1"`, `"t2"` or `"t3"`).
#[pyfunction]
fn build_reduction(graph: &PyGraph, theorem: &str) -> PyResult<PyGraph> {
    let t: core::Construction = theorem.parse().map_err(PyValueError::new_err)?;
    let inst = core::build_reduction(&graph.inner, t).map_err(err)?;
    Ok(PyGraph { inner: inst.target })
}

#[pyfunction]
#[pyo3(signature = (graph, theorem, budget = None))]
fn verify_reduction<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    theorem: &str,
    budget: Option<u128>,
) -> PyResult<Bound<'py, PyAny>> {
    let t: core::Construction = theorem.parse().map_err(PyValueError::new_err)?;
    let g = graph.inner.clone();
    let opts = options(true, budget);
    let rep = py
        .detach(move || core::verify_reduction(&g, t, &opts))
        .map_err(err)?;
    to_py(py, &rep)
}

fn grid_kind(name: &str) -> PyResult<GridKind> {
    name.parse().map_err(PyValueError::new_err)
}

#[pyfunction]
#[pyo3(signature = (grid, radius = 12))]
fn grid_verify<'py>(py: Python<'py>, grid: &str, radius: i64) -> PyResult<Bound<'py, PyAny>> {
    let rep = core::verify_window(&PatrolState::new(grid_kind(grid)?), radius);
    let out = to_py(py, &rep)?;
    out.cast::<PyDict>()?.set_item("ok", rep.ok())?;
    Ok(out)
}

/// Random attacks on the grid patrol; returns whether every round checked out
/// and the final pattern offset.
#[pyfunction]
#[pyo3(signature = (grid, rounds = 1000, seed = 0, radius = 12))]
fn grid_simulate(
    grid: &str,
    rounds: usize,
    seed: u64,
    radius: i64,
) -> PyResult<(bool, (i64, i64))> {
    let t = core::simulate_grid(
        grid_kind(grid)?,
        &GridAttacker::Random { seed },
        rounds,
        radius,
    )
    .map_err(err)?;
    let last = t
        .rounds
        .last()
        .map(|r| r.offset_after)
        .unwrap_or(core::Coord::ORIGIN);
    Ok((t.defender_survived, (last.x, last.y)))
}

#[pymodule]
fn eternal_domination(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(static_number, m)?)?;
    m.add_function(wrap_pyfunction!(eternal_number, m)?)?;
    m.add_function(wrap_pyfunction!(safe_family, m)?)?;
    m.add_function(wrap_pyfunction!(build_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(grid_verify, m)?)?;
    m.add_function(wrap_pyfunction!(grid_simulate, m)?)?;
    Ok(())
}
