//! Python bindings for `selfsim-core`.
//!
//! Reports, traces and monoid verdicts cross the boundary as plain dicts built from the
//! same JSON the command-line tool prints.

use pyo3::create_exception;
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use selfsim_core::analysis::find_g_circuit;
use selfsim_core::catalog;
use selfsim_core::classify::{classify, ClassifyOptions};
use selfsim_core::document::{self, quotient_document, GraphDocument};
use selfsim_core::monoid::{is_group_nonzero, monoid_of, MonoidBounds};
use selfsim_core::orbit::{compute_triv, is_pseudo_free, PseudoFreeness};
use selfsim_core::render::{monoid_json, path_json, report_json, report_text, trace_json};
use selfsim_core::trace::{graph_g_trace_exists, graph_trace_exists};
use selfsim_core::{build_quotient, LoadError};

create_exception!(selfsim, ParseError, PyValueError);
create_exception!(selfsim, ValidationError, PyValueError);

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn load_err(e: LoadError) -> PyErr {
    match e {
        LoadError::Parse(p) => ParseError::new_err(p.to_string()),
        LoadError::Invalid(v) => ValidationError::new_err(
            v.violations
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
        ),
    }
}

fn bounds(monoid_bound: usize, identity_bound: usize, max_states: usize) -> MonoidBounds {
    MonoidBounds {
        identity_degree: identity_bound,
        degree: monoid_bound,
        max_states,
    }
}

fn on_quotient(graph: &str) -> PyResult<bool> {
    match graph {
        "E" => Ok(false),
        "quotient" => Ok(true),
        other => Err(PyValueError::new_err(format!(
            "graph must be \"E\" or \"quotient\", got {other:?}"
        ))),
    }
}

/// A validated finite group acting self-similarly on a finite graph.
#[pyclass(name = "SelfSimilarGraph", frozen)]
struct PySelfSimilarGraph {
    inner: selfsim_core::SelfSimilarGraph,
}

#[pymethods]
impl PySelfSimilarGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        document::load(text)
            .map(|inner| PySelfSimilarGraph { inner })
            .map_err(load_err)
    }

    fn to_json(&self) -> String {
        GraphDocument::from_model(&self.inner).to_json()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.graph().vertex_names().to_vec()
    }

    /// `(id, d, r)` triples.
    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        let g = self.inner.graph();
        g.edges()
            .iter()
            .map(|e| {
                (
                    e.name.clone(),
                    g.vertex_name(e.d).to_string(),
                    g.vertex_name(e.r).to_string(),
                )
            })
            .collect()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    fn is_source_free(&self) -> bool {
        self.inner.is_source_free()
    }

    /// `None` when pseudo-free, otherwise a `(g, edge)` counterexample.
    fn pseudo_free_counterexample(&self) -> Option<(String, String)> {
        match is_pseudo_free(&self.inner) {
            PseudoFreeness::Free => None,
            PseudoFreeness::Counterexample { g, e } => Some((
                self.inner.group().name(g).to_string(),
                self.inner.graph().edge_name(e).to_string(),
            )),
        }
    }

    fn is_pseudo_free(&self) -> bool {
        self.inner.pseudo_free()
    }

    /// Pairs `(g, v)` with `g` acting trivially on every path received at `v`.
    fn trivial_cylinder_pairs(&self) -> PyResult<Vec<(String, String)>> {
        let triv = compute_triv(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(triv
            .iter()
            .map(|(g, v)| {
                (
                    self.inner.group().name(g).to_string(),
                    self.inner.graph().vertex_name(v).to_string(),
                )
            })
            .collect())
    }

    fn g_circuit<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        find_g_circuit(&self.inner)
            .map(|w| {
                let mut v = path_json(self.inner.graph(), &w.path);
                v["twist"] = Value::from(self.inner.group().name(w.twist));
                to_py(py, &v)
            })
            .transpose()
    }

    /// The orbit quotient as a graph document dict.
    fn quotient<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let q = build_quotient(&self.inner);
        let text = quotient_document(&self.inner, &q).to_json();
        let value: Value = serde_json::from_str(&text).expect("documents are JSON");
        to_py(py, &value)
    }

    #[pyo3(signature = (graph = "E"))]
    fn trace<'py>(&self, py: Python<'py>, graph: &str) -> PyResult<Bound<'py, PyAny>> {
        let value = if on_quotient(graph)? {
            let q = build_quotient(&self.inner);
            trace_json(q.graph(), &graph_trace_exists(q.graph()))
        } else {
            trace_json(self.inner.graph(), &graph_g_trace_exists(&self.inner))
        };
        to_py(py, &value)
    }

    #[pyo3(signature = (graph = "E", monoid_bound = 24, identity_bound = 6, max_states = 200_000))]
    fn monoid<'py>(
        &self,
        py: Python<'py>,
        graph: &str,
        monoid_bound: usize,
        identity_bound: usize,
        max_states: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let quotient = on_quotient(graph)?;
        let q = build_quotient(&self.inner);
        let g = if quotient {
            q.graph()
        } else {
            self.inner.graph()
        };
        let p = monoid_of(g);
        let verdict =
            py.detach(|| is_group_nonzero(&p, bounds(monoid_bound, identity_bound, max_states)));
        let mut value = monoid_json(&p, &verdict);
        if quotient {
            value["heuristic"] = Value::Bool(true);
        }
        to_py(py, &value)
    }

    /// The full classification report as a dict, or as text with `text=True`.
    #[pyo3(signature = (text = false, run_monoid = true, monoid_bound = 24, identity_bound = 6, max_states = 200_000))]
    fn classify<'py>(
        &self,
        py: Python<'py>,
        text: bool,
        run_monoid: bool,
        monoid_bound: usize,
        identity_bound: usize,
        max_states: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let options = ClassifyOptions {
            monoid: bounds(monoid_bound, identity_bound, max_states),
            run_monoid,
        };
        let report = py
            .detach(|| classify(&self.inner, &options))
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        if text {
            Ok(report_text(&self.inner, &report)
                .into_pyobject(py)?
                .into_any())
        } else {
            to_py(py, &report_json(&self.inner, &report))
        }
    }

    fn __repr__(&self) -> String {
        let g = self.inner.graph();
        format!(
            "SelfSimilarGraph({} vertices, {} edges, group of order {})",
            g.vertex_count(),
            g.edge_count(),
            self.inner.group().order()
        )
    }
}

#[pyfunction]
fn load(text: &str) -> PyResult<PySelfSimilarGraph> {
    PySelfSimilarGraph::from_json(text)
}

#[pyfunction]
fn load_file(path: &str) -> PyResult<PySelfSimilarGraph> {
    let text = std::fs::read_to_string(path)?;
    PySelfSimilarGraph::from_json(&text)
}

/// Violations as strings; empty when the document is valid. Malformed text raises `ParseError`.
#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<String>> {
    match document::load(text) {
        Ok(_) => Ok(Vec::new()),
        Err(LoadError::Invalid(v)) => Ok(v.violations.iter().map(|x| x.to_string()).collect()),
        Err(e) => Err(load_err(e)),
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::entries().into_iter().map(|(n, _)| n).collect()
}

#[pyfunction(name = "catalog")]
fn catalog_entry(name: &str) -> PyResult<PySelfSimilarGraph> {
    catalog::entries()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, inner)| PySelfSimilarGraph { inner })
        .ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pymodule]
fn selfsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySelfSimilarGraph>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(load_file, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ValidationError", m.py().get_type::<ValidationError>())?;
    Ok(())
}
