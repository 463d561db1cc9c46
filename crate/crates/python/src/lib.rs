use std::collections::BTreeSet;
use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use twobridge::{EkMode, Error, Fraction, KnotClass, SEvenVector, SearchConfig};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::NotCertified { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn vector(entries: Vec<i8>) -> PyResult<SEvenVector> {
    SEvenVector::new(entries).map_err(py_err)
}

fn knots(set: BTreeSet<KnotClass>) -> Vec<Knot> {
    set.into_iter().map(|inner| Knot { inner }).collect()
}

/// A 2-bridge knot, stored as its canonical fraction p/q.
#[pyclass(frozen, from_py_object, module = "twobridge")]
#[derive(Clone)]
struct Knot {
    inner: KnotClass,
}

#[pymethods]
impl Knot {
    #[new]
    fn new(p: BigInt, q: BigInt) -> PyResult<Self> {
        let f = Fraction::new(p, q).map_err(py_err)?;
        let inner = twobridge::canonical_fraction(&f).map_err(py_err)?;
        Ok(Knot { inner })
    }

    /// Parses "p/q".
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        let inner: KnotClass = s.parse().map_err(py_err)?;
        Ok(Knot { inner })
    }

    #[getter]
    fn p(&self) -> BigInt {
        self.inner.p().clone()
    }

    #[getter]
    fn q(&self) -> BigInt {
        self.inner.q().clone()
    }

    /// The canonical vector, a list of entries in {-2, 0, 2}.
    fn vector(&self) -> Vec<i8> {
        twobridge::phi_inverse(&self.inner)
            .into_representative()
            .into_entries()
    }

    fn crossing_number(&self) -> u64 {
        twobridge::crossing_number(twobridge::phi_inverse(&self.inner).representative())
    }

    /// Nontrivial knots strictly below this one, sorted by (q, p).
    fn smaller(&self) -> PyResult<Vec<Knot>> {
        twobridge::smaller_knots(twobridge::phi_inverse(&self.inner).representative())
            .map(knots)
            .map_err(py_err)
    }

    /// Whether this knot lies strictly above `other`.
    fn dominates(&self, other: &Knot) -> bool {
        twobridge::is_strictly_greater(
            &twobridge::phi_inverse(&self.inner),
            &twobridge::phi_inverse(&other.inner),
        )
    }

    fn __eq__(&self, other: &Knot) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Knot({}, {})", self.inner.p(), self.inner.q())
    }
}

/// `(r, [a1, ..., ak])` with p/q = r + [a1, ..., ak] and every term even.
#[pyfunction]
fn even_expansion(p: BigInt, q: BigInt) -> PyResult<(BigInt, Vec<i64>)> {
    let f = Fraction::new(p, q).map_err(py_err)?;
    let cf = twobridge::even_expansion(&f).map_err(py_err)?;
    Ok((cf.integer, cf.terms))
}

#[pyfunction]
fn phi(v: Vec<i8>) -> PyResult<Knot> {
    let inner = twobridge::phi(&vector(v)?).map_err(py_err)?;
    Ok(Knot { inner })
}

#[pyfunction]
fn crossing_number(v: Vec<i8>) -> PyResult<u64> {
    Ok(twobridge::crossing_number(&vector(v)?))
}

#[pyfunction]
fn smaller_knots(v: Vec<i8>) -> PyResult<Vec<Knot>> {
    twobridge::smaller_knots(&vector(v)?)
        .map(knots)
        .map_err(py_err)
}

#[pyfunction]
fn torus_vector(n: u64) -> PyResult<Vec<i8>> {
    Ok(twobridge::torus_vector(n).map_err(py_err)?.into_entries())
}

#[pyfunction]
fn c_m(m: usize) -> u64 {
    twobridge::c_m(m)
}

/// EK(n) and a witness knot attaining it, if any.
#[pyfunction]
#[pyo3(signature = (n, assisted = false, budget = 18, workers = 0))]
fn ek(
    py: Python<'_>,
    n: u64,
    assisted: bool,
    budget: u64,
    workers: usize,
) -> PyResult<(usize, Option<Knot>)> {
    let mode = if assisted {
        EkMode::Assisted
    } else {
        EkMode::Exact
    };
    let config = SearchConfig { budget, workers };
    let value = py
        .detach(|| twobridge::ek(n, mode, &config))
        .map_err(py_err)?;
    Ok((value.value, value.witness.map(|inner| Knot { inner })))
}

fn seam_set(v: Vec<i8>, wrt: Option<Vec<Knot>>) -> PyResult<twobridge::SeamSet> {
    let v = vector(v)?;
    let classes: Vec<KnotClass> = match wrt {
        Some(ks) => ks.into_iter().map(|k| k.inner).collect(),
        None => twobridge::smaller_knots(&v)
            .map_err(py_err)?
            .into_iter()
            .collect(),
    };
    let parsings = twobridge::parsings_wrt(&v, &classes);
    twobridge::find_seams(&v, &parsings).map_err(py_err)
}

/// Cut positions shared by every parsing of `v` (1-based: cut after entry t).
#[pyfunction]
#[pyo3(signature = (v, wrt = None))]
fn seams(v: Vec<i8>, wrt: Option<Vec<Knot>>) -> PyResult<Vec<usize>> {
    Ok(seam_set(v, wrt)?.cuts)
}

/// Negates the listed pieces between seams, numbered from 1.
#[pyfunction]
#[pyo3(signature = (v, segments, wrt = None))]
fn negate(v: Vec<i8>, segments: Vec<usize>, wrt: Option<Vec<Knot>>) -> PyResult<Vec<i8>> {
    let s = seam_set(v, wrt)?;
    let chosen = segments.into_iter().collect();
    Ok(twobridge::negate_segments(&s, &chosen)
        .map_err(py_err)?
        .into_entries())
}

#[pyfunction]
fn lift(v: Vec<i8>, target: u64) -> PyResult<Vec<i8>> {
    Ok(twobridge::lift_construction(&vector(v)?, target)
        .map_err(py_err)?
        .into_entries())
}

/// The reproduction report as text, and whether every check passed.
#[pyfunction]
#[pyo3(signature = (budget = 18, workers = 0))]
fn verify(py: Python<'_>, budget: u64, workers: usize) -> (String, bool) {
    let report = py.detach(|| twobridge::verify_all(&SearchConfig { budget, workers }));
    (report.to_string(), report.all_passed())
}

#[pymodule]
#[pyo3(name = "twobridge")]
fn twobridge_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Knot>()?;
    m.add_function(wrap_pyfunction!(even_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_number, m)?)?;
    m.add_function(wrap_pyfunction!(smaller_knots, m)?)?;
    m.add_function(wrap_pyfunction!(torus_vector, m)?)?;
    m.add_function(wrap_pyfunction!(c_m, m)?)?;
    m.add_function(wrap_pyfunction!(ek, m)?)?;
    m.add_function(wrap_pyfunction!(seams, m)?)?;
    m.add_function(wrap_pyfunction!(negate, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
