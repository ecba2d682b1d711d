//! Python bindings: `import tally`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tally_core::format::parse_odot;
use tally_core::{fixtures, FreeElement, Outcome};

create_exception!(tally, TallyError, PyValueError, "Invalid system or failed precondition.");

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    TallyError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, text: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// A finite carrier with a base point and a family of commuting maps.
#[pyclass(module = "tally", name = "CountingSystem", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySystem {
    inner: tally_core::CountingSystem,
}

impl PySystem {
    fn wrap(inner: tally_core::CountingSystem) -> Self {
        PySystem { inner }
    }

    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner
            .carrier()
            .index_of(label)
            .ok_or_else(|| err(format!("unknown element `{label}`")))
    }

    fn labels_of(&self, row: &[usize]) -> Vec<String> {
        row.iter().map(|&x| self.inner.label(x).to_string()).collect()
    }
}

#[pymethods]
impl PySystem {
    /// Build from element labels, the base label, index labels, and one
    /// image list (of labels) per map.
    #[new]
    fn new(elements: Vec<String>, base: &str, index_set: Vec<String>, maps: Vec<Vec<String>>) -> PyResult<Self> {
        let pos = |l: &str| {
            elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| err(format!("unknown element `{l}`")))
        };
        let base = pos(base)?;
        let tables = maps
            .iter()
            .map(|m| m.iter().map(|l| pos(l)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        tally_core::CountingSystem::from_tables(elements.clone(), base, index_set, tables)
            .map(PySystem::wrap)
            .map_err(err)
    }

    /// Parse the text format (`system`, `elements`, `base`, `map` lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tally_core::parse_system(text)
            .map(|doc| PySystem::wrap(doc.system))
            .map_err(err)
    }

    #[pyo3(signature = (name = "system"))]
    fn emit(&self, name: &str) -> String {
        tally_core::emit_system(name, &self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.carrier().labels().to_vec()
    }

    #[getter]
    fn base(&self) -> String {
        self.inner.label(self.inner.base()).to_string()
    }

    #[getter]
    fn index_set(&self) -> Vec<String> {
        self.inner.index_set().to_vec()
    }

    /// Image lists per index label.
    #[getter]
    fn maps(&self) -> BTreeMap<String, Vec<String>> {
        self.inner
            .index_set()
            .iter()
            .zip(self.inner.maps())
            .map(|(l, f)| (l.clone(), self.labels_of(f.table())))
            .collect()
    }

    fn apply(&self, label: &str, x: &str) -> PyResult<String> {
        let s = self
            .inner
            .index_of(label)
            .ok_or_else(|| err(format!("unknown map `{label}`")))?;
        Ok(self.inner.label(self.inner.map(s).apply(self.index(x)?)).to_string())
    }

    fn is_minimal(&self) -> bool {
        self.inner.is_minimal()
    }

    fn unreachable(&self) -> Vec<String> {
        self.labels_of(&self.inner.unreachable())
    }

    fn minimal_core(&self) -> Self {
        PySystem::wrap(self.inner.minimal_core())
    }

    fn product(&self, other: &PySystem) -> PyResult<Self> {
        self.inner.product(&other.inner).map(PySystem::wrap).map_err(err)
    }

    fn adjoin_omega(&self) -> PyResult<Self> {
        self.inner.adjoin_omega().map(PySystem::wrap).map_err(err)
    }

    fn pad_single(&self, label: &str) -> PyResult<Self> {
        self.inner.pad_single(label).map(PySystem::wrap).map_err(err)
    }

    fn is_dedekind(&self) -> PyResult<bool> {
        self.inner.is_dedekind().map_err(err)
    }

    /// Number of distinct maps generated under composition.
    fn closure_size(&self) -> PyResult<usize> {
        tally_core::monoid_closure(&self.inner).map(|tm| tm.len()).map_err(err)
    }

    /// The derived addition; requires a minimal system.
    fn addition(&self) -> PyResult<MonoidTable> {
        tally_core::derive_addition(&self.inner)
            .map(|inner| MonoidTable { inner })
            .map_err(err)
    }

    /// The derived multiplication as rows of labels. Single-map systems need
    /// no `odot`; otherwise pass the odot file text. Returns `None` when the
    /// odot operation admits no multiplication.
    #[pyo3(signature = (odot = None))]
    fn multiplication(&self, odot: Option<&str>) -> PyResult<Option<Vec<Vec<String>>>> {
        let plus = tally_core::derive_addition(&self.inner).map_err(err)?;
        let times = match odot {
            None => tally_core::derive_multiplication_single(&self.inner, &plus).map_err(err)?,
            Some(text) => {
                let table = parse_odot(text, self.inner.index_set()).map_err(err)?;
                match tally_core::derive_multiplication_indexed(&self.inner, &plus, &table).map_err(err)? {
                    Outcome::Found(t) => t,
                    Outcome::Absent(_) => return Ok(None),
                }
            }
        };
        Ok(Some(times.table().iter().map(|r| self.labels_of(r)).collect()))
    }

    /// The unique morphism into `dst` as a label mapping, or `None`.
    fn morphism_to(&self, dst: &PySystem) -> PyResult<Option<BTreeMap<String, String>>> {
        let out = tally_core::morphism_find(&self.inner, &dst.inner).map_err(err)?;
        Ok(out.found().map(|m| {
            m.map()
                .iter()
                .enumerate()
                .map(|(x, &y)| (self.inner.label(x).to_string(), dst.inner.label(y).to_string()))
                .collect()
        }))
    }

    /// Evaluate a multiset given as `"s:3,t:1"` or a `{label: count}` dict.
    fn free_eval(&self, multiset: &Bound<'_, PyAny>) -> PyResult<String> {
        let e: FreeElement = if let Ok(text) = multiset.extract::<String>() {
            text.parse().map_err(err)?
        } else {
            let counts: BTreeMap<String, u64> = multiset.extract()?;
            FreeElement::from_counts(counts)
        };
        let y = tally_core::free_eval(&self.inner, &e).map_err(err)?;
        Ok(self.inner.label(y).to_string())
    }

    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = tally_core::analyze(&self.inner).map_err(err)?;
        from_json(py, to_json(&r))
    }

    fn initiality<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = tally_core::initiality_report(&self.inner).map_err(err)?;
        from_json(py, to_json(&r))
    }

    /// Freeness of the derived monoid with respect to the generator points.
    fn free_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let plus = tally_core::derive_addition(&self.inner).map_err(err)?;
        let gens: Vec<usize> = (0..self.inner.index_set().len())
            .map(|s| self.inner.generator_point(s))
            .collect();
        let r = tally_core::is_free_report(&plus, &gens).map_err(err)?;
        from_json(py, to_json(&r))
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "CountingSystem(size={}, base={:?}, index_set={:?})",
            self.inner.size(),
            self.inner.label(self.inner.base()),
            self.inner.index_set()
        )
    }
}

/// A finite commutative monoid given by its operation table.
#[pyclass(module = "tally", frozen)]
struct MonoidTable {
    inner: tally_core::MonoidTable,
}

#[pymethods]
impl MonoidTable {
    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn zero(&self) -> String {
        self.inner.label(self.inner.zero()).to_string()
    }

    /// Rows of labels.
    #[getter]
    fn table(&self) -> Vec<Vec<String>> {
        self.inner
            .table()
            .iter()
            .map(|r| r.iter().map(|&v| self.inner.label(v).to_string()).collect())
            .collect()
    }

    fn op(&self, a: &str, b: &str) -> PyResult<String> {
        let idx = |l: &str| {
            self.inner
                .index_of(l)
                .ok_or_else(|| err(format!("unknown element `{l}`")))
        };
        Ok(self.inner.label(self.inner.op(idx(a)?, idx(b)?)).to_string())
    }

    fn flags<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let f = self.inner.flags();
        let d = PyDict::new(py);
        d.set_item("associative", f.associative)?;
        d.set_item("commutative", f.commutative)?;
        d.set_item("cancellative", f.cancellative)?;
        d.set_item("group", f.group)?;
        d.set_item("zero_sum_free", f.zero_sum_free)?;
        Ok(d)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
fn cyc(n: usize) -> PyResult<PySystem> {
    if n == 0 {
        return Err(err("cycle length must be positive"));
    }
    Ok(PySystem::wrap(fixtures::cyc(n)))
}

#[pyfunction]
fn zpair(n: usize) -> PyResult<PySystem> {
    if n == 0 {
        return Err(err("modulus must be positive"));
    }
    Ok(PySystem::wrap(fixtures::zpair(n)))
}

#[pyfunction]
fn rho(tail: usize, cycle: usize) -> PyResult<PySystem> {
    if cycle == 0 {
        return Err(err("cycle length must be positive"));
    }
    Ok(PySystem::wrap(fixtures::rho(tail, cycle)))
}

#[pymodule]
fn tally(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<MonoidTable>()?;
    m.add_function(wrap_pyfunction!(cyc, m)?)?;
    m.add_function(wrap_pyfunction!(zpair, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add("TallyError", m.py().get_type::<TallyError>())?;
    Ok(())
}
