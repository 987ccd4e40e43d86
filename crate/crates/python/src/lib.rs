//! Python bindings. Ring operations return native Python values; the
//! algorithm entry points return the same JSON documents as the command
//! line, decoded into dicts and lists.

use std::path::PathBuf;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyInt, PyString};
use serde_json::{json, Value as Json};

use ringlab::docs::{self, ShiftKind};
use ringlab::harness::Bounds;
use ringlab::matred::snf_document;
use ringlab::ring::{Elem, Op, RingHandle, Value};

create_exception!(ringlab_py, RinglabError, PyValueError);

fn err(e: ringlab::Error) -> PyErr {
    RinglabError::new_err(e.to_string())
}

fn bounds() -> PyResult<Bounds> {
    Bounds::from_env().map_err(err)
}

fn to_py(py: Python<'_>, doc: &Json) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(doc).expect("json");
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn dumps(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()
}

/// Element argument as text: strings pass through, integers are printed,
/// anything else (coefficient lists, matrices, tuples) goes through JSON.
fn arg_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if obj.is_instance_of::<PyString>() {
        obj.extract()
    } else if obj.is_instance_of::<PyInt>() {
        Ok(obj.str()?.to_string())
    } else {
        dumps(obj)
    }
}

/// A ring given by its spec, e.g. `Ring("Z/6")`, `Ring("M2(Z/2)")`, `Ring("F3[x]")`.
#[pyclass(name = "Ring", module = "ringlab_py", frozen)]
struct PyRing {
    handle: RingHandle,
}

impl PyRing {
    fn elem(&self, obj: &Bound<'_, PyAny>) -> PyResult<Elem> {
        if obj.is_instance_of::<PyString>() || obj.is_instance_of::<PyInt>() {
            return self.handle.parse_elem(&arg_text(obj)?).map_err(err);
        }
        let v: Json = serde_json::from_str(&dumps(obj)?).map_err(|e| RinglabError::new_err(e.to_string()))?;
        self.handle.elem_from_json(&v).map_err(err)
    }

    fn out(&self, py: Python<'_>, x: &Elem) -> PyResult<Py<PyAny>> {
        match &x.value {
            Value::Int(n) => Ok(n.clone().into_pyobject(py)?.into_any().unbind()),
            _ => to_py(py, &self.handle.to_json(x).map_err(err)?),
        }
    }

    fn binary(&self, py: Python<'_>, op: Op, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let (a, b) = (self.elem(a)?, self.elem(b)?);
        self.out(py, &self.handle.arith(op, &a, Some(&b)).map_err(err)?)
    }
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let handle = RingHandle::parse(spec, bounds()?.max_card).map_err(err)?;
        Ok(PyRing { handle })
    }

    #[getter]
    fn spec(&self) -> String {
        self.handle.spec().to_string()
    }

    /// Number of elements, or `None` for `Z` and `F<p>[x]`.
    #[getter]
    fn cardinality(&self) -> Option<usize> {
        self.handle.cardinality()
    }

    fn add(&self, py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        self.binary(py, Op::Add, a, b)
    }

    fn mul(&self, py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        self.binary(py, Op::Mul, a, b)
    }

    fn neg(&self, py: Python<'_>, a: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let a = self.elem(a)?;
        self.out(py, &self.handle.arith(Op::Neg, &a, None).map_err(err)?)
    }

    fn is_unit(&self, a: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.handle.is_unit(&self.elem(a)?).map_err(err)
    }

    /// All units; raises for infinite rings.
    fn units(&self, py: Python<'_>) -> PyResult<Vec<Py<PyAny>>> {
        let units = self.handle.units().map_err(err)?;
        units.iter().map(|u| self.out(py, u)).collect()
    }

    /// Property report as a dict, e.g. `check("sr1")`.
    fn check(&self, py: Python<'_>, property: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &docs::check_document(&self.spec(), property, &bounds()?).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.spec())
    }
}

#[pyfunction]
#[pyo3(signature = (ring, property))]
fn check(py: Python<'_>, ring: &str, property: &str) -> PyResult<Py<PyAny>> {
    to_py(py, &docs::check_document(ring, property, &bounds()?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (a, b, ring = "Z"))]
fn extended_gcd(py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, ring: &str) -> PyResult<Py<PyAny>> {
    to_py(py, &docs::bezout_document(ring, &arg_text(a)?, &arg_text(b)?).map_err(err)?)
}

fn witness(py: Python<'_>, kind: ShiftKind, args: [&Bound<'_, PyAny>; 3], ring: &str) -> PyResult<Py<PyAny>> {
    let [a, b, c] = args.map(arg_text);
    to_py(py, &docs::witness_document(ring, kind, &a?, &b?, &c?).map_err(err)?)
}

/// `l` with `gcd(a, b + c l) = 1`.
#[pyfunction]
#[pyo3(signature = (a, b, c, ring = "Z"))]
fn asr1_witness(
    py: Python<'_>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    ring: &str,
) -> PyResult<Py<PyAny>> {
    witness(py, ShiftKind::Asr1, [a, b, c], ring)
}

/// `(l, m)` with `gcd(a + c l, b + c m) = 1`.
#[pyfunction]
#[pyo3(signature = (a, b, c, ring = "Z"))]
fn sr2_witness(
    py: Python<'_>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    ring: &str,
) -> PyResult<Py<PyAny>> {
    witness(py, ShiftKind::Sr2, [a, b, c], ring)
}

#[pyfunction]
#[pyo3(signature = (a, b, ring = "Z"))]
fn adequate_decomposition(
    py: Python<'_>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    ring: &str,
) -> PyResult<Py<PyAny>> {
    to_py(py, &docs::adequate_document(ring, &arg_text(a)?, &arg_text(b)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (a, b, c, ring = "Z"))]
fn separating_idempotent(
    py: Python<'_>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    ring: &str,
) -> PyResult<Py<PyAny>> {
    let doc = docs::idempotent_document(ring, &arg_text(a)?, &arg_text(b)?, &arg_text(c)?).map_err(err)?;
    to_py(py, &doc)
}

#[pyfunction]
#[pyo3(signature = (a, b, c, ring = "Z"))]
fn reduce_two_by_two(
    py: Python<'_>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    ring: &str,
) -> PyResult<Py<PyAny>> {
    let doc = docs::two_by_two_document(ring, &arg_text(a)?, &arg_text(b)?, &arg_text(c)?).map_err(err)?;
    to_py(py, &doc)
}

#[pyfunction]
#[pyo3(signature = (a, ring = "Z"))]
fn is_neat(py: Python<'_>, a: &Bound<'_, PyAny>, ring: &str) -> PyResult<Py<PyAny>> {
    to_py(py, &docs::neat_document(ring, &arg_text(a)?).map_err(err)?)
}

/// Canonical diagonal form of `rows` (a list of lists) with transforms.
#[pyfunction]
#[pyo3(signature = (rows, ring = "Z", certify = true))]
fn smith_normal_form(py: Python<'_>, rows: &Bound<'_, PyAny>, ring: &str, certify: bool) -> PyResult<Py<PyAny>> {
    let rows: Json = serde_json::from_str(&dumps(rows)?).map_err(|e| RinglabError::new_err(e.to_string()))?;
    to_py(py, &snf_document(&json!({ "ring": ring, "rows": rows }), certify).map_err(err)?)
}

/// Runs a verification suite; returns the report dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", catalog = None))]
fn verify(py: Python<'_>, suite: &str, catalog: Option<PathBuf>) -> PyResult<Py<PyAny>> {
    let bounds = bounds()?;
    let (doc, _) = py
        .detach(|| docs::verify_document(suite, catalog.as_deref(), &bounds))
        .map_err(err)?;
    to_py(py, &doc)
}

/// `gcd` of two integers, as a convenience for quick checks.
#[pyfunction]
fn gcd(a: BigInt, b: BigInt) -> BigInt {
    ringlab::euclid::gcd(&ringlab::ring::Integers, &a, &b)
}

#[pymodule]
fn ringlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RinglabError", m.py().get_type::<RinglabError>())?;
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(extended_gcd, m)?)?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(asr1_witness, m)?)?;
    m.add_function(wrap_pyfunction!(sr2_witness, m)?)?;
    m.add_function(wrap_pyfunction!(adequate_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(separating_idempotent, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_two_by_two, m)?)?;
    m.add_function(wrap_pyfunction!(is_neat, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
