//! Python bindings. Matrices cross the boundary as lists of rows whose
//! entries are strings in the `"p/q"`, `"a+bi"` scalar syntax.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use expansive_core as core;
use expansive_core::corpus;
use expansive_core::interchange;
use expansive_core::oracle::{self, PlantSpec};
use expansive_core::{ComplementOrder, Dims, GaussianRational, VerificationReport};

create_exception!(expansive, ExpansiveError, PyException);

fn err(e: impl std::fmt::Display) -> PyErr {
    ExpansiveError::new_err(e.to_string())
}

type Rows = Vec<Vec<String>>;
type DimsTuple = (usize, usize, usize, usize);

#[pyclass(name = "Matrix", module = "expansive", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(core::Matrix);

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from rows of scalar strings (or ints).
    #[new]
    #[pyo3(signature = (rows, cols=None))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, cols: Option<usize>) -> PyResult<Self> {
        let width = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let s: String = match x.extract::<i64>() {
                            Ok(i) => i.to_string(),
                            Err(_) => x.extract()?,
                        };
                        s.parse::<GaussianRational>().map_err(err)
                    })
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        core::Matrix::from_rows(parsed, width).map(PyMatrix).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyMatrix(core::Matrix::identity(n))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        interchange::parse_matrix(text.as_bytes()).map(PyMatrix).map_err(err)
    }

    fn to_json(&self) -> String {
        interchange::matrix_to_value(&self.0).to_string()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    fn rows(&self) -> Rows {
        rows_of(&self.0)
    }

    fn adjoint(&self) -> Self {
        PyMatrix(self.0.adjoint())
    }

    fn inverse(&self) -> PyResult<Self> {
        core::inverse(&self.0).map(PyMatrix).map_err(err)
    }

    fn rank(&self) -> usize {
        core::rank(&self.0)
    }

    fn kernel(&self) -> Self {
        PyMatrix(core::kernel(&self.0))
    }

    fn determinant(&self) -> PyResult<String> {
        core::determinant(&self.0).map(|d| d.to_string()).map_err(err)
    }

    /// Inertia `(pos, neg, zero)` of a Hermitian matrix.
    fn inertia(&self) -> PyResult<(usize, usize, usize)> {
        let i = core::hermitian_inertia(&self.0).map_err(err)?;
        Ok((i.pos, i.neg, i.zero))
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PyMatrix).map_err(err)
    }

    fn __add__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PyMatrix).map_err(err)
    }

    fn __sub__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(PyMatrix).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", rows_of(&self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn rows_of(m: &core::Matrix) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(|z| z.to_string()).collect()).collect()
}

#[pyclass(name = "Pair", module = "expansive", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPair(core::HPair);

#[pymethods]
impl PyPair {
    #[new]
    fn new(a: &PyMatrix, h: &PyMatrix) -> PyResult<Self> {
        core::HPair::new(a.0.clone(), h.0.clone()).map(PyPair).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        interchange::parse_pair(text.as_bytes()).map(|d| PyPair(d.pair)).map_err(err)
    }

    #[getter]
    fn a(&self) -> PyMatrix {
        PyMatrix(self.0.a().clone())
    }

    #[getter]
    fn h(&self) -> PyMatrix {
        PyMatrix(self.0.h().clone())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn defect(&self) -> PyMatrix {
        PyMatrix(self.0.defect())
    }

    fn h_adjoint(&self) -> PyMatrix {
        PyMatrix(self.0.h_adjoint())
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = self.0.classify();
        let d = PyDict::new(py);
        d.set_item("expansive", c.expansive)?;
        d.set_item("unitary", c.unitary)?;
        d.set_item("selfadjoint", c.selfadjoint)?;
        let i = c.defect_inertia;
        d.set_item("defect_inertia", (i.pos, i.neg, i.zero))?;
        Ok(d)
    }

    /// Basis (as columns) of the unobservable subspace of `(D, A)`.
    fn unobservable(&self) -> PyResult<PyMatrix> {
        core::unobservable_subspace(&self.0.defect(), self.0.a())
            .map(|s| PyMatrix(s.basis().clone()))
            .map_err(err)
    }

    #[pyo3(signature = (complement_seed=None))]
    fn decompose(&self, complement_seed: Option<u64>) -> PyResult<PyDecomposition> {
        let order = complement_seed.map_or(ComplementOrder::Canonical, ComplementOrder::Seeded);
        core::decompose_with(&self.0, order).map(PyDecomposition).map_err(err)
    }

    fn verify(&self, s: &PyMatrix, dims: DimsTuple) -> PyResult<Vec<(String, bool)>> {
        let d = Dims::new(dims.0, dims.1, dims.2, dims.3);
        core::verify(&self.0, &s.0, d).map(|r| report(&r)).map_err(err)
    }

    fn to_json(&self) -> String {
        let doc = interchange::PairDocument {
            pair: self.0.clone(),
            name: None,
            source: None,
        };
        interchange::pair_to_value(&doc).to_string()
    }
}

fn report(r: &VerificationReport) -> Vec<(String, bool)> {
    r.checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
}

#[pyclass(name = "Decomposition", module = "expansive", frozen)]
struct PyDecomposition(core::Decomposition);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn dims(&self) -> DimsTuple {
        let d = self.0.dims;
        (d.m, d.m1, d.m2, d.m3)
    }

    #[getter]
    fn s(&self) -> PyMatrix {
        PyMatrix(self.0.s.clone())
    }

    #[getter]
    fn a_transformed(&self) -> PyMatrix {
        PyMatrix(self.0.a_transformed.clone())
    }

    #[getter]
    fn h_transformed(&self) -> PyMatrix {
        PyMatrix(self.0.h_transformed.clone())
    }

    /// Block `(i, j)` of `S⁻¹AS`, 1-based.
    fn block(&self, i: usize, j: usize) -> PyResult<PyMatrix> {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(err("block indices run from 1 to 4"));
        }
        Ok(PyMatrix(self.0.a(i, j).clone()))
    }

    /// `(A22, H22, is_unitary_part)`.
    fn compression(&self) -> (PyMatrix, PyMatrix, bool) {
        let c = core::unitary_compression(&self.0);
        (PyMatrix(c.a22), PyMatrix(c.h22), c.is_unitary_part)
    }

    fn report(&self) -> Vec<(String, bool)> {
        report(&self.0.report)
    }

    fn to_json(&self) -> String {
        interchange::decomposition_to_value(&self.0).to_string()
    }
}

/// Planted pair with block sizes `(m, m1, m, m3)`; returns `(pair, S, dims)`.
#[pyfunction]
#[pyo3(signature = (m, m1, m3, seed, bound=3))]
fn generate(m: usize, m1: usize, m3: usize, seed: u64, bound: i64) -> PyResult<(PyPair, PyMatrix, DimsTuple)> {
    let p = oracle::plant(PlantSpec::new(m, m1, m3, seed).with_bound(bound)).map_err(err)?;
    let d = p.dims;
    Ok((PyPair(p.pair), PyMatrix(p.s_true), (d.m, d.m1, d.m2, d.m3)))
}

/// Embedded worked example `k` (1 to 5).
#[pyfunction]
fn example(k: usize) -> PyResult<PyPair> {
    corpus::example(k)
        .map(|r| PyPair(r.doc.pair))
        .ok_or_else(|| err(format!("no example {k}")))
}

#[pymodule]
fn expansive(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyPair>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add("ExpansiveError", m.py().get_type::<ExpansiveError>())?;
    Ok(())
}
