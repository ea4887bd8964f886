//! Python bindings. Big integers come back as Python `int`, index sets as
//! lists, and library errors as `ValueError` (`RuntimeError` for internal
//! inconsistencies).

use degenflag::bijections::{self, complete_dims};
use degenflag::pluecker::{self, RelationKind};
use degenflag::{dellac, flag, genocchi, subspace, Error};
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field(p: u32) -> PyResult<degenflag::PrimeField> {
    degenflag::PrimeField::new(p).map_err(py_err)
}

#[pyclass(name = "DellacConfig", frozen, skip_from_py_object, eq, hash, module = "degenflag")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyDellac(degenflag::DellacConfig);

#[pymethods]
impl PyDellac {
    #[new]
    fn new(n: usize, boxes: Vec<(usize, usize)>) -> PyResult<Self> {
        degenflag::DellacConfig::new(n, &boxes).map(Self).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Boxes as sorted `(column, row)` pairs.
    fn boxes(&self) -> Vec<(usize, usize)> {
        self.0.boxes()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn refinement_stat(&self) -> usize {
        self.0.refinement_stat()
    }

    fn grid(&self) -> String {
        self.0.to_grid_string()
    }

    fn __repr__(&self) -> String {
        format!("DellacConfig({}, {:?})", self.0.n(), self.0.boxes())
    }
}

#[pyclass(name = "FixedPointTuple", frozen, skip_from_py_object, eq, hash, module = "degenflag")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyTuple(degenflag::FixedPointTuple);

#[pymethods]
impl PyTuple {
    #[new]
    #[pyo3(signature = (n, subsets, dims = None))]
    fn new(n: usize, subsets: Vec<Vec<usize>>, dims: Option<Vec<usize>>) -> PyResult<Self> {
        let dims = dims.unwrap_or_else(|| complete_dims(n));
        degenflag::FixedPointTuple::new(n, dims, subsets).map(Self).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().to_vec()
    }

    #[getter]
    fn subsets(&self) -> Vec<Vec<usize>> {
        self.0.subsets().to_vec()
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn __repr__(&self) -> String {
        format!("FixedPointTuple({})", self.0)
    }
}

#[pyclass(name = "DumontPermutation", frozen, skip_from_py_object, eq, hash, module = "degenflag")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyDumont(degenflag::DumontPermutation);

#[pymethods]
impl PyDumont {
    #[new]
    fn new(values: Vec<usize>) -> PyResult<Self> {
        degenflag::DumontPermutation::new(values).map(Self).map_err(py_err)
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("DumontPermutation({:?})", self.0.values())
    }
}

#[pyclass(name = "Subspace", frozen, from_py_object, eq, hash, module = "degenflag")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PySubspace(degenflag::Subspace);

#[pymethods]
impl PySubspace {
    /// Span of `vectors` in `F_p^n`.
    #[new]
    fn new(p: u32, n: usize, vectors: Vec<Vec<u32>>) -> PyResult<Self> {
        degenflag::Subspace::span(field(p)?, n, &vectors).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn coordinate(p: u32, n: usize, indices: Vec<usize>) -> PyResult<Self> {
        degenflag::Subspace::coordinate(field(p)?, n, &indices).map(Self).map_err(py_err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.field().p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Reduced row echelon basis.
    fn rows(&self) -> Vec<Vec<u32>> {
        self.0.rows().to_vec()
    }

    fn contains(&self, other: &PySubspace) -> bool {
        self.0.contains(&other.0)
    }

    fn projection(&self, i: usize, j: usize) -> PyResult<Self> {
        self.0.projection(i, j).map(Self).map_err(py_err)
    }

    fn cell_label(&self) -> Vec<usize> {
        flag::grassmann_cell_label(&self.0)
    }

    /// Nonzero Plücker coordinates as `(J, X_J)` pairs.
    fn pluecker_coordinates(&self) -> PyResult<Vec<(Vec<usize>, u32)>> {
        Ok(pluecker::pluecker_coordinates(&self.0).map_err(py_err)?.nonzero())
    }

    fn __repr__(&self) -> String {
        format!("Subspace(p={}, n={}, rows={:?})", self.p(), self.n(), self.0.rows())
    }
}

#[pyclass(name = "PlueckerRelation", frozen, skip_from_py_object, module = "degenflag")]
#[derive(Clone)]
pub struct PyRelation(degenflag::PlueckerRelation);

#[pymethods]
impl PyRelation {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind {
            RelationKind::Classical => "classical",
            RelationKind::Degenerate => "degenerate",
        }
    }

    /// Terms as `(sign, L, J)`.
    #[getter]
    fn terms(&self) -> Vec<(i8, Vec<usize>, Vec<usize>)> {
        self.0.terms.iter().map(|t| (t.sign, t.l.clone(), t.j.clone())).collect()
    }

    /// Value on `(V_p, V_q)` with `dim V_p = |L|`, `dim V_q = |J|`.
    fn evaluate(&self, vp: &PySubspace, vq: &PySubspace) -> PyResult<u32> {
        let xp = pluecker::pluecker_coordinates(&vp.0).map_err(py_err)?;
        let xq = pluecker::pluecker_coordinates(&vq.0).map_err(py_err)?;
        pluecker::evaluate_relation(&self.0, &xp, &xq).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PlueckerRelation({})", self.0)
    }
}

#[pyfunction]
fn normalized_h(n: usize) -> PyResult<BigUint> {
    genocchi::normalized_h(n).map_err(py_err)
}

#[pyfunction]
fn normalized_h_sequence(max_n: usize) -> PyResult<Vec<BigUint>> {
    genocchi::normalized_h_sequence(max_n).map_err(py_err)
}

#[pyfunction]
fn seidel_triangle(rows: usize) -> PyResult<Vec<Vec<BigUint>>> {
    Ok(genocchi::seidel_triangle(rows).map_err(py_err)?.rows().to_vec())
}

#[pyfunction]
fn kreweras_triangle(rows: usize) -> PyResult<Vec<Vec<BigUint>>> {
    Ok(genocchi::kreweras_triangle(rows).map_err(py_err)?.rows().to_vec())
}

/// Coefficients of `P_n(q)`, constant term first.
#[pyfunction]
fn poincare_polynomial(n: usize) -> PyResult<Vec<BigUint>> {
    Ok(genocchi::poincare_polynomial(n).map_err(py_err)?.coeffs().to_vec())
}

#[pyfunction]
fn enumerate_dellac(n: usize) -> PyResult<Vec<PyDellac>> {
    Ok(dellac::enumerate_dellac(n).map_err(py_err)?.into_iter().map(PyDellac).collect())
}

#[pyfunction]
#[pyo3(signature = (n, dims = None))]
fn enumerate_tuples(n: usize, dims: Option<Vec<usize>>) -> PyResult<Vec<PyTuple>> {
    let dims = dims.unwrap_or_else(|| complete_dims(n));
    Ok(bijections::enumerate_tuples(n, &dims).map_err(py_err)?.into_iter().map(PyTuple).collect())
}

#[pyfunction]
fn enumerate_dumont(n: usize) -> PyResult<Vec<PyDumont>> {
    Ok(bijections::enumerate_dumont(n).map_err(py_err)?.into_iter().map(PyDumont).collect())
}

#[pyfunction]
fn tuple_to_dellac(t: &PyTuple) -> PyResult<PyDellac> {
    bijections::tuple_to_dellac(&t.0).map(PyDellac).map_err(py_err)
}

#[pyfunction]
fn dellac_to_tuple(d: &PyDellac) -> PyTuple {
    PyTuple(bijections::dellac_to_tuple(&d.0))
}

#[pyfunction]
fn dumont_to_dellac(p: &PyDumont) -> PyResult<PyDellac> {
    bijections::dumont_to_dellac(&p.0).map(PyDellac).map_err(py_err)
}

#[pyfunction]
fn dellac_to_dumont(d: &PyDellac) -> PyDumont {
    PyDumont(bijections::dellac_to_dumont(&d.0))
}

/// `F_p`-points of the degenerate flag variety (complete flags by default).
#[pyfunction]
#[pyo3(signature = (n, p, dims = None))]
fn count_points(n: usize, p: u32, dims: Option<Vec<usize>>) -> PyResult<BigUint> {
    let dims = dims.unwrap_or_else(|| complete_dims(n));
    flag::count_points(&dims, n, field(p)?).map_err(py_err)
}

type CellRow = (Vec<Vec<usize>>, Option<usize>, BigUint);

/// `(subsets, dellac_length, count)` per cell, sorted by label.
#[pyfunction]
#[pyo3(signature = (n, p, dims = None))]
fn cell_point_counts(n: usize, p: u32, dims: Option<Vec<usize>>) -> PyResult<Vec<CellRow>> {
    let dims = dims.unwrap_or_else(|| complete_dims(n));
    Ok(flag::cell_point_counts(&dims, n, field(p)?)
        .map_err(py_err)?
        .into_iter()
        .map(|c| (c.tuple.subsets().to_vec(), c.dellac_length, c.count))
        .collect())
}

#[pyfunction]
fn is_degenerate_flag(spaces: Vec<PySubspace>) -> PyResult<bool> {
    let first = spaces.first().ok_or_else(|| PyValueError::new_err("empty chain"))?;
    let (f, n) = (first.0.field(), first.0.n());
    let chain = degenflag::FlagChain::new(f, n, spaces.into_iter().map(|s| s.0).collect()).map_err(py_err)?;
    Ok(chain.is_degenerate_flag())
}

#[pyfunction]
fn grassmann_cell_dimension(label: Vec<usize>, n: usize) -> PyResult<usize> {
    flag::grassmann_cell_dimension(&label, n).map_err(py_err)
}

#[pyfunction]
fn gaussian_binomial(n: usize, d: usize, q: u64) -> BigUint {
    subspace::gaussian_binomial(n, d, q)
}

#[pyfunction]
fn enumerate_grassmannian(d: usize, n: usize, p: u32) -> PyResult<Vec<PySubspace>> {
    Ok(subspace::enumerate_grassmannian(d, n, field(p)?)
        .map_err(py_err)?
        .into_iter()
        .map(PySubspace)
        .collect())
}

#[pyfunction]
#[pyo3(name = "classical_relation", signature = (l, j, k))]
fn classical(l: Vec<usize>, j: Vec<usize>, k: usize) -> PyResult<PyRelation> {
    pluecker::classical_relation(&l, &j, k).map(PyRelation).map_err(py_err)
}

#[pyfunction]
#[pyo3(name = "degenerate_relation", signature = (l, j, k))]
fn degenerate(l: Vec<usize>, j: Vec<usize>, k: usize) -> PyResult<PyRelation> {
    pluecker::degenerate_relation(&l, &j, k).map(PyRelation).map_err(py_err)
}

/// Summary of the cutout check as a dict.
#[pyfunction]
fn verify_ideal_cutout<'py>(py: Python<'py>, n: usize, p: u32, dims: Vec<usize>) -> PyResult<Bound<'py, PyDict>> {
    let r = pluecker::verify_ideal_cutout(&dims, n, field(p)?).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("points_scanned", r.points_scanned)?;
    d.set_item("relations", r.relations)?;
    d.set_item("points_by_chain", r.points_by_chain)?;
    d.set_item("points_by_relations", r.points_by_relations)?;
    d.set_item("equal", r.equal)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "degenflag")]
pub fn degenflag_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDellac>()?;
    m.add_class::<PyTuple>()?;
    m.add_class::<PyDumont>()?;
    m.add_class::<PySubspace>()?;
    m.add_class::<PyRelation>()?;
    m.add_function(wrap_pyfunction!(normalized_h, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_h_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(seidel_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(kreweras_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_dellac, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tuples, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_dumont, m)?)?;
    m.add_function(wrap_pyfunction!(tuple_to_dellac, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_to_tuple, m)?)?;
    m.add_function(wrap_pyfunction!(dumont_to_dellac, m)?)?;
    m.add_function(wrap_pyfunction!(dellac_to_dumont, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(cell_point_counts, m)?)?;
    m.add_function(wrap_pyfunction!(is_degenerate_flag, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_cell_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_grassmannian, m)?)?;
    m.add_function(wrap_pyfunction!(classical, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ideal_cutout, m)?)?;
    Ok(())
}
