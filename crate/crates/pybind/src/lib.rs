//! Python bindings: a `Graph` class plus the main analysis operations.
//!
//! Build the module with `cargo build -p pentagonal-py --release` and place
//! the produced cdylib on the Python path as `pentagonal_py.so` (see
//! python/smoke_test.py for a loader that does this from the target dir).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pentagonal::bounds;
use pentagonal::coloring;
use pentagonal::cover;
use pentagonal::extraction;
use pentagonal::generators;
use pentagonal::holes;
use pentagonal::io as gio;
use pentagonal::levelling;
use pentagonal::{Error, VertexSet};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Usage(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::Capability(_) | Error::Budget { .. } => PyRuntimeError::new_err(e.to_string()),
    }
}

/// An immutable simple undirected graph.
#[pyclass(name = "Graph", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: pentagonal::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: pentagonal::Graph::from_edges(n, edges).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gio::parse_graph6(line).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gio::parse_edge_list(text).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        Ok(self.inner.neighbors(v).map_err(to_py_err)?.to_vec())
    }

    fn nth_neighborhood(&self, v: usize, r: u32) -> PyResult<Vec<usize>> {
        Ok(self.inner.nth_neighborhood(v, r).map_err(to_py_err)?.to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.vertex_count() && v < self.inner.vertex_count() && self.inner.has_edge(u, v)
    }

    fn to_graph6(&self) -> String {
        gio::to_graph6(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        gio::write_edge_list(&self.inner)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::cycle(n).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn grotzsch() -> PyGraph {
    PyGraph {
        inner: generators::grotzsch(),
    }
}

#[pyfunction]
fn petersen() -> PyGraph {
    PyGraph {
        inner: generators::petersen(),
    }
}

#[pyfunction]
fn mycielskian(g: &PyGraph) -> PyGraph {
    PyGraph {
        inner: generators::mycielskian(&g.inner),
    }
}

#[pyfunction]
fn are_isomorphic(a: &PyGraph, b: &PyGraph) -> bool {
    pentagonal::graph::are_isomorphic(&a.inner, &b.inner)
}

/// (chi, colour assignment per vertex)
#[pyfunction]
fn chromatic_number(g: &PyGraph) -> PyResult<(u32, Vec<u32>)> {
    let (chi, witness) = coloring::chromatic_number(&g.inner).map_err(to_py_err)?;
    Ok((chi, witness.assignment))
}

#[pyfunction]
fn brute_force_chromatic(g: &PyGraph) -> PyResult<u32> {
    coloring::brute_force_chromatic(&g.inner).map_err(to_py_err)
}

#[pyfunction]
fn clique_number(g: &PyGraph) -> u32 {
    holes::clique_number(&g.inner)
}

#[pyfunction]
fn odd_hole_number(g: &PyGraph) -> u32 {
    holes::odd_hole_number(&g.inner)
}

#[pyfunction]
fn is_pentagonal(g: &PyGraph) -> bool {
    holes::is_pentagonal(&g.inner)
}

#[pyfunction]
fn max_hole_length(g: &PyGraph) -> u32 {
    holes::max_hole_length(&g.inner)
}

#[pyfunction]
#[pyo3(signature = (g, min_len, max_len, parity="any"))]
fn induced_cycles(g: &PyGraph, min_len: usize, max_len: usize, parity: &str) -> PyResult<Vec<Vec<usize>>> {
    let parity: holes::Parity = parity.parse().map_err(to_py_err)?;
    let cycles = holes::enumerate_induced_cycles(&g.inner, min_len, max_len, parity, None).map_err(to_py_err)?;
    Ok(cycles.into_iter().map(|c| c.vertices).collect())
}

#[pyfunction]
fn kappa_profile(g: &PyGraph) -> PyResult<(u32, u32)> {
    let p = coloring::neighborhood_chi_profile(&g.inner).map_err(to_py_err)?;
    Ok((p.kappa2, p.kappa3))
}

#[pyfunction]
fn bfs_levelling(g: &PyGraph, root: usize) -> PyResult<Vec<Vec<usize>>> {
    let lv = levelling::bfs_levelling(&g.inner, root).map_err(to_py_err)?;
    Ok(lv.levels.iter().map(VertexSet::to_vec).collect())
}

/// Certifying extraction on the BFS levelling of `root`; returns a dict with
/// outcome "stable" (levels, chi_base, guaranteed) or "witness" (kind, data).
#[pyfunction]
fn extract_stable_levelling<'py>(
    py: Python<'py>,
    g: &PyGraph,
    root: usize,
    ell: u32,
    kappa: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let lv = levelling::bfs_levelling(&g.inner, root).map_err(to_py_err)?;
    let out = PyDict::new(py);
    match extraction::extract_stable_levelling(&g.inner, &lv, ell, kappa).map_err(to_py_err)? {
        extraction::ExtractOutcome::Stable {
            levelling,
            chi_base,
            guaranteed,
            ..
        } => {
            out.set_item("outcome", "stable")?;
            let levels: Vec<Vec<usize>> = levelling.levels().iter().map(VertexSet::to_vec).collect();
            out.set_item("levels", levels)?;
            out.set_item("chi_base", chi_base)?;
            out.set_item("guaranteed", guaranteed)?;
        }
        extraction::ExtractOutcome::Witness(w) => {
            out.set_item("outcome", "witness")?;
            out.set_item("kind", w.kind())?;
            match w {
                extraction::Witness::Triangle(c) | extraction::Witness::LongOddHole(c) => {
                    out.set_item("cycle", c.vertices)?;
                }
                extraction::Witness::HighChiBall { vertex, ball } => {
                    out.set_item("vertex", vertex)?;
                    out.set_item("ball", ball.to_vec())?;
                }
            }
        }
    }
    Ok(out)
}

/// Structural profile as a dict.
#[pyfunction]
fn profile<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let p = bounds::profile(&g.inner).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", p.n)?;
    out.set_item("m", p.m)?;
    out.set_item("omega", p.omega)?;
    out.set_item("chi", p.chi)?;
    out.set_item("odd_hole_number", p.odd_hole_number)?;
    out.set_item("max_hole_length", p.max_hole_length)?;
    out.set_item("has_5_hole", p.has_5_hole)?;
    out.set_item("has_7_hole", p.has_7_hole)?;
    out.set_item("triangle_free", p.triangle_free)?;
    out.set_item("kappa2", p.kappa2)?;
    out.set_item("kappa3", p.kappa3)?;
    out.set_item("pentagonal", holes::is_pentagonal(&g.inner))?;
    Ok(out)
}

/// Bound report as a JSON-compatible dict (entries + violation count).
#[pyfunction]
fn check_bounds<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let report = bounds::check_graph_against_theorems(&g.inner).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("violations", report.violations())?;
    let entries: Vec<Bound<'py, PyDict>> = report
        .entries
        .iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("id", &e.id)?;
            d.set_item("applicable", e.applicable)?;
            d.set_item("bound", e.bound)?;
            d.set_item("strict", e.strict)?;
            d.set_item("satisfied", e.satisfied)?;
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    out.set_item("entries", entries)?;
    Ok(out)
}

/// Bounded search for a 1-covering host; dict with verdict/explored and the
/// host as graph6 when found.
#[pyfunction]
#[pyo3(signature = (h, max_cover_size, budget=None))]
fn search_one_covering<'py>(
    py: Python<'py>,
    h: &PyGraph,
    max_cover_size: usize,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let outcome = cover::search_one_covering(&h.inner, max_cover_size, 2, budget).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", outcome.verdict())?;
    match outcome {
        cover::CoverSearchOutcome::Found {
            host,
            levelling,
            explored,
            ..
        } => {
            out.set_item("explored", explored)?;
            out.set_item("host_graph6", gio::to_graph6(&host))?;
            let levels: Vec<Vec<usize>> = levelling.levels().iter().map(VertexSet::to_vec).collect();
            out.set_item("levels", levels)?;
        }
        cover::CoverSearchOutcome::Absent { explored }
        | cover::CoverSearchOutcome::BudgetExhausted { explored } => {
            out.set_item("explored", explored)?;
        }
    }
    Ok(out)
}

#[pyfunction]
fn bound_boundedrad(ell: u32, kappa2: u32, kappa3: u32) -> u64 {
    bounds::bound_boundedrad(ell, kappa2, kappa3)
}

#[pyfunction]
fn bound_2rad(ell: u32, kappa2: u32) -> u64 {
    bounds::bound_2rad(ell, kappa2)
}

#[pyfunction]
fn bound_pentagonal_main() -> u64 {
    bounds::bound_pentagonal_main()
}

#[pyfunction]
fn bound_longoddhole(ell: u32) -> u64 {
    bounds::bound_longoddhole(ell)
}

#[pymodule]
fn pentagonal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(grotzsch, m)?)?;
    m.add_function(wrap_pyfunction!(petersen, m)?)?;
    m.add_function(wrap_pyfunction!(mycielskian, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_chromatic, m)?)?;
    m.add_function(wrap_pyfunction!(clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(odd_hole_number, m)?)?;
    m.add_function(wrap_pyfunction!(is_pentagonal, m)?)?;
    m.add_function(wrap_pyfunction!(max_hole_length, m)?)?;
    m.add_function(wrap_pyfunction!(induced_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_profile, m)?)?;
    m.add_function(wrap_pyfunction!(bfs_levelling, m)?)?;
    m.add_function(wrap_pyfunction!(extract_stable_levelling, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(search_one_covering, m)?)?;
    m.add_function(wrap_pyfunction!(bound_boundedrad, m)?)?;
    m.add_function(wrap_pyfunction!(bound_2rad, m)?)?;
    m.add_function(wrap_pyfunction!(bound_pentagonal_main, m)?)?;
    m.add_function(wrap_pyfunction!(bound_longoddhole, m)?)?;
    Ok(())
}
