//! Python bindings: double complexes, their cohomology tables and
//! spectral sequences, the model presets and the geometric constructions.

use std::collections::BTreeMap;

use bicx_core::bicomplex::{self as bx, DoubleComplex, Window};
use bicx_core::cohomology::{self as co, CohomologyKind, CohomologyTable, Direction, Slot};
use bicx_core::geometry;
use bicx_core::models::{self, AlgebraModel};
use bicx_core::render::render_diamond;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(name: &str) -> PyResult<CohomologyKind> {
    Ok(match name {
        "dolbeault" | "e1" => CohomologyKind::Dolbeault,
        "conjugate_dolbeault" => CohomologyKind::ConjugateDolbeault,
        "de_rham" | "derham" => CohomologyKind::DeRham,
        "bott_chern" | "bc" => CohomologyKind::BottChern,
        "aeppli" => CohomologyKind::Aeppli,
        other => return Err(PyValueError::new_err(format!("unknown cohomology kind '{other}'"))),
    })
}

fn parse_direction(name: &str) -> PyResult<Direction> {
    match name {
        "column" => Ok(Direction::Column),
        "row" => Ok(Direction::Row),
        other => Err(PyValueError::new_err(format!("direction must be 'column' or 'row', got '{other}'"))),
    }
}

fn load_model(reference: &str) -> PyResult<AlgebraModel> {
    if let Some(m) = models::preset(reference) {
        return Ok(m);
    }
    let spec = models::parse_model_file(reference).map_err(value_error)?;
    models::build_model(&spec).map_err(value_error)
}

#[pyclass(name = "CohomologyTable", module = "bicx", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyTable(CohomologyTable);

#[pymethods]
impl PyTable {
    #[getter]
    fn kind(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn is_graded(&self) -> bool {
        self.0.is_graded()
    }

    fn get(&self, p: i32, q: i32) -> usize {
        self.0.get(p, q)
    }

    fn degree(&self, k: i32) -> usize {
        self.0.degree(k)
    }

    fn betti(&self) -> Vec<usize> {
        self.0.betti()
    }

    /// Nonzero entries, keyed by `(p, q)` or by degree.
    fn entries(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        if self.0.is_graded() {
            let m: BTreeMap<i32, usize> = self
                .0
                .entries()
                .map(|(s, d)| (s.degree(), d))
                .collect();
            Ok(m.into_pyobject(py)?.into_any().unbind())
        } else {
            let m: BTreeMap<(i32, i32), usize> = self
                .0
                .entries()
                .filter_map(|(s, d)| match s {
                    Slot::Bidegree(p, q) => Some(((p, q), d)),
                    Slot::Degree(_) => None,
                })
                .collect();
            Ok(m.into_pyobject(py)?.into_any().unbind())
        }
    }

    fn degree_multisets(&self) -> Vec<(i32, Vec<usize>)> {
        self.0.degree_multisets()
    }

    fn total(&self) -> usize {
        self.0.total()
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    fn diamond(&self) -> String {
        render_diamond(&self.0).to_string()
    }

    fn __repr__(&self) -> String {
        format!("<CohomologyTable {} total={}>", self.0.kind(), self.0.total())
    }
}

#[pyclass(name = "SpectralSequence", module = "bicx", frozen)]
struct PySpectralSequence(co::SpectralSequenceResult);

#[pymethods]
impl PySpectralSequence {
    #[getter]
    fn degeneration_page(&self) -> usize {
        self.0.degeneration_page
    }

    #[getter]
    fn pages(&self) -> Vec<PyTable> {
        self.0.pages.iter().cloned().map(PyTable).collect()
    }

    #[getter]
    fn e_infinity(&self) -> PyTable {
        PyTable(self.0.e_infinity.clone())
    }

    fn page(&self, r: usize) -> PyResult<PyTable> {
        if r == 0 {
            return Err(PyValueError::new_err("pages start at r = 1"));
        }
        Ok(PyTable(self.0.page(r)))
    }
}

#[pyclass(name = "DoubleComplex", module = "bicx", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyComplex(DoubleComplex);

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        bx::from_text(text).map(PyComplex).map_err(value_error)
    }

    fn to_text(&self) -> String {
        bx::to_text(&self.0)
    }

    /// `(p_min, p_max, q_min, q_max)`, or `None` for the zero complex.
    #[getter]
    fn window(&self) -> Option<(i32, i32, i32, i32)> {
        let w = self.0.window();
        (!w.is_empty()).then_some((w.p_min, w.p_max, w.q_min, w.q_max))
    }

    fn dim(&self, p: i32, q: i32) -> usize {
        self.0.dim((p, q))
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.0.total_dim()
    }

    #[getter]
    fn has_sigma(&self) -> bool {
        self.0.has_sigma()
    }

    /// Violated identities, empty when the complex is valid.
    fn validate(&self) -> Vec<String> {
        bx::validate(&self.0).iter().map(ToString::to_string).collect()
    }

    fn table(&self, kind: &str) -> PyResult<PyTable> {
        Ok(PyTable(co::table(&self.0, parse_kind(kind)?)))
    }

    #[pyo3(signature = (direction = "column"))]
    fn frolicher(&self, direction: &str) -> PyResult<PySpectralSequence> {
        Ok(PySpectralSequence(co::frolicher(&self.0, parse_direction(direction)?)))
    }

    fn euler_characteristic(&self) -> i64 {
        co::euler_characteristic(&self.0)
    }

    fn shift(&self, i: i32) -> Self {
        PyComplex(bx::shift(&self.0, i))
    }

    fn transpose(&self) -> Self {
        PyComplex(bx::transpose(&self.0))
    }

    fn dual(&self, n: i32) -> Self {
        PyComplex(bx::dual(&self.0, n))
    }

    fn tensor(&self, other: &PyComplex) -> Self {
        PyComplex(bx::tensor(&self.0, &other.0))
    }

    fn __add__(&self, other: &PyComplex) -> Self {
        PyComplex(bx::direct_sum(&self.0, &other.0).0)
    }

    fn __repr__(&self) -> String {
        format!("<DoubleComplex window={} total_dim={}>", self.0.window(), self.0.total_dim())
    }
}

#[pyclass(name = "Morphism", module = "bicx", frozen)]
struct PyMorphism(bx::Morphism);

#[pymethods]
impl PyMorphism {
    #[getter]
    fn source(&self) -> PyComplex {
        PyComplex(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyComplex {
        PyComplex(self.0.target().clone())
    }

    /// `(accepted, report)` with the witness table as text.
    fn is_e1_isomorphism(&self) -> (bool, String) {
        let (ok, report) = bx::is_e1_isomorphism(&self.0);
        (ok, report.to_string())
    }
}

/// A preset name (`iwasawa`, `torus1`, ...) or the text of a model file.
#[pyfunction]
fn model(reference: &str) -> PyResult<PyComplex> {
    Ok(PyComplex(load_model(reference)?.into_complex()))
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    models::PRESETS.to_vec()
}

#[pyfunction]
fn random_complex(seed: u64, window: (i32, i32, i32, i32), size: usize) -> PyResult<PyComplex> {
    let (a, b, c, d) = window;
    bx::random_complex(seed, Window::new(a, b, c, d), size)
        .map(PyComplex)
        .map_err(value_error)
}

#[pyfunction]
fn dot(p: i32, q: i32) -> PyComplex {
    PyComplex(bx::dot(p, q))
}

#[pyfunction]
fn square(p: i32, q: i32) -> PyComplex {
    PyComplex(bx::square(p, q))
}

#[pyfunction]
fn zigzag(p: i32, q: i32, first: usize, length: usize) -> PyComplex {
    PyComplex(bx::zigzag(p, q, first, length))
}

#[pyfunction]
fn projective_bundle(base: &PyComplex, rank: i64) -> PyResult<(PyComplex, PyMorphism)> {
    let (k, inc) = geometry::projective_bundle(&base.0, rank).map_err(value_error)?;
    Ok((PyComplex(k), PyMorphism(inc)))
}

#[pyfunction]
fn blow_up(ambient: &PyComplex, center: &PyComplex, codimension: i64) -> PyResult<PyComplex> {
    geometry::blow_up(&ambient.0, &center.0, codimension)
        .map(|b| PyComplex(b.total))
        .map_err(value_error)
}

#[pyfunction]
fn exceptional_consistency_check(center: &PyComplex, codimension: i64) -> PyResult<bool> {
    geometry::exceptional_consistency_check(&center.0, codimension).map_err(value_error)
}

#[pyfunction]
fn serre_pairing(reference: &str) -> PyResult<PyMorphism> {
    let m = load_model(reference)?;
    models::serre_pairing_morphism(&m).map(PyMorphism).map_err(value_error)
}

#[pyfunction]
fn inclusion(a: &PyComplex, b: &PyComplex) -> PyMorphism {
    PyMorphism(bx::direct_sum(&a.0, &b.0).1)
}

#[pymodule]
fn bicx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PySpectralSequence>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(model, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(random_complex, m)?)?;
    m.add_function(wrap_pyfunction!(dot, m)?)?;
    m.add_function(wrap_pyfunction!(square, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag, m)?)?;
    m.add_function(wrap_pyfunction!(projective_bundle, m)?)?;
    m.add_function(wrap_pyfunction!(blow_up, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_consistency_check, m)?)?;
    m.add_function(wrap_pyfunction!(serre_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(inclusion, m)?)?;
    Ok(())
}
