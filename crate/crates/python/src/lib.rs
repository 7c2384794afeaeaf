//! Python bindings. Reports cross the boundary as JSON and arrive as plain
//! dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use wdr_core::report::to_json;
use wdr_core::{CayleySpec, Error, RelationPartition, Valency};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

type PyType2 = (u32, u32);
type Entry = (PyType2, PyType2, PyType2, u32);

fn pair(t: wdr_core::TwoWayType) -> PyType2 {
    (t.forward, t.backward)
}

/// A simple digraph on vertices `0..order`.
#[pyclass(frozen, eq, skip_from_py_object, module = "wdr")]
#[derive(Clone, PartialEq)]
pub struct Digraph {
    inner: wdr_core::Digraph,
}

#[pymethods]
impl Digraph {
    #[staticmethod]
    #[pyo3(signature = (order, arcs, allow_undirected = false))]
    fn from_arcs(
        order: usize,
        arcs: Vec<(usize, usize)>,
        allow_undirected: bool,
    ) -> PyResult<Self> {
        let inner = wdr_core::Digraph::new(order, &arcs, !allow_undirected).map_err(py_err)?;
        Ok(Digraph { inner })
    }

    /// `cay:zn:<n>:<c,..>` or `cay:prod:<q>x<m>:<a.b>,..`.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        let spec: CayleySpec = spec.parse().map_err(py_err)?;
        Ok(Digraph {
            inner: spec.digraph(),
        })
    }

    /// An edge list with an `n <order>` header, or a Cayley spec.
    #[staticmethod]
    #[pyo3(signature = (text, allow_undirected = false))]
    fn parse(text: &str, allow_undirected: bool) -> PyResult<Self> {
        let inner = wdr_core::parse_input(text, allow_undirected).map_err(py_err)?;
        Ok(Digraph { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.inner.arc_count()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().collect()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.inner.order() && v < self.inner.order() && self.inner.has_arc(u, v)
    }

    fn is_strongly_connected(&self) -> bool {
        self.inner.is_strongly_connected()
    }

    fn is_undirected(&self) -> bool {
        self.inner.is_undirected()
    }

    fn distance_matrix(&self) -> PyResult<Vec<Vec<u32>>> {
        let m = self.inner.distance_matrix().map_err(py_err)?;
        Ok(m.rows().map(|r| r.to_vec()).collect())
    }

    /// The digraph with vertex `v` renamed to `perm[v]`.
    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..self.inner.order()).collect::<Vec<_>>() {
            return Err(PyValueError::new_err("not a permutation of the vertices"));
        }
        Ok(Digraph {
            inner: self.inner.relabel(&perm),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Digraph(order={}, arcs={})",
            self.inner.order(),
            self.inner.arc_count()
        )
    }
}

/// Full analysis as a dict.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, d: &Digraph) -> PyResult<Bound<'py, PyAny>> {
    let g = d.inner.clone();
    let r = py.detach(move || wdr_core::analyze(&g)).map_err(py_err)?;
    loads(py, &to_json(&r))
}

/// Canonical certificate as a hex string.
#[pyfunction]
fn certificate(d: &Digraph) -> PyResult<String> {
    wdr_core::canonical_certificate(&d.inner)
        .map(|c| c.to_hex())
        .map_err(py_err)
}

/// A vertex map `a -> b` carrying arcs to arcs, or `None`.
#[pyfunction]
fn are_isomorphic(a: &Digraph, b: &Digraph) -> PyResult<Option<Vec<usize>>> {
    wdr_core::are_isomorphic(&a.inner, &b.inner).map_err(py_err)
}

/// `(label, spec)` for the nine diameter-2 digraphs.
#[pyfunction]
fn catalog() -> Vec<(String, String)> {
    wdr_core::catalog()
        .into_iter()
        .map(|e| (e.label.to_string(), e.spec.to_string()))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (n_min, n_max, diameter = None))]
fn search_circulants<'py>(
    py: Python<'py>,
    n_min: usize,
    n_max: usize,
    diameter: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(move || wdr_core::search_circulants(n_min, n_max, diameter))
        .map_err(py_err)?;
    loads(py, &to_json(&r))
}

/// Nonzero `(h, i, j, p^h_{i,j})`, or `None` when the digraph is not weakly
/// distance-regular.
#[pyfunction]
fn intersection_numbers(d: &Digraph) -> PyResult<Option<Vec<Entry>>> {
    let part = RelationPartition::new(&d.inner).map_err(py_err)?;
    Ok(wdr_core::IntersectionTensor::compute(&part).ok().map(|t| {
        t.nonzero_entries()
            .map(|(h, i, j, p)| (pair(h), pair(i), pair(j), p))
            .collect()
    }))
}

/// Sorted two-way types with their valencies; `None` for a non-constant valency.
#[pyfunction]
fn two_way_types(d: &Digraph) -> PyResult<Vec<(PyType2, Option<usize>)>> {
    let part = RelationPartition::new(&d.inner).map_err(py_err)?;
    Ok(part
        .types()
        .iter()
        .zip(part.valencies())
        .map(|(&t, v)| {
            (
                pair(t),
                match v {
                    Valency::Constant(k) => Some(*k),
                    Valency::NonConstant => None,
                },
            )
        })
        .collect())
}

#[pymodule]
fn wdr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Digraph>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(search_circulants, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(two_way_types, m)?)?;
    Ok(())
}
