//! Python bindings. Categories, gradings and diagrams are opaque handles;
//! every report is returned as a dict shaped like the CLI payload.

use std::path::PathBuf;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use gradecat::covering::{find_identity_j_morphism, smash_product, Search};
use gradecat::error::Error;
use gradecat::fincat::{FinCategory, ObjectSubset};
use gradecat::grading::{extend_trivial, Extension};
use gradecat::pi1::{kappa_relative, relative_pi1, GradingDiagram};
use gradecat::{payload, schema};

create_exception!(gradecat, GradecatError, PyValueError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(m) => PyOSError::new_err(m),
        e => GradecatError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn object(cat: &FinCategory, label: Option<&str>) -> PyResult<usize> {
    label.map_or(Ok(0), |l| cat.object_index(l).map_err(err))
}

fn subset(cat: &FinCategory, labels: &[String]) -> PyResult<ObjectSubset> {
    ObjectSubset::from_labels(cat, labels).map_err(err)
}

/// A finite linear category over Q or F_p.
#[pyclass(frozen, skip_from_py_object, module = "gradecat")]
#[derive(Clone)]
pub struct Category {
    inner: Arc<FinCategory>,
}

#[pymethods]
impl Category {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = schema::parse_json(text).map_err(err)?;
        let inner = schema::category_from_json(&v).map_err(err)?;
        Ok(Category {
            inner: Arc::new(inner),
        })
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let inner = schema::read_category(&path).map_err(err)?;
        Ok(Category {
            inner: Arc::new(inner),
        })
    }

    fn to_json(&self) -> String {
        schema::to_canonical(&schema::category_to_json(&self.inner))
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().to_vec()
    }

    /// Axiom violations; empty when the category is valid.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let vs: Vec<Value> = self
            .inner
            .validate()
            .iter()
            .map(payload::category_violation)
            .collect();
        to_py(py, &Value::Array(vs))
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_convex<'py>(&self, py: Python<'py>, objects: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let r = self.inner.is_convex(&subset(&self.inner, &objects)?);
        let witness = r
            .witness
            .map(|(f, g)| json!({"f": self.inner.basis_label(f), "g": self.inner.basis_label(g)}));
        to_py(py, &json!({"convex": r.convex, "witness": witness}))
    }

    fn full_subcategory(&self, objects: Vec<String>) -> PyResult<Category> {
        let sub = self
            .inner
            .full_subcategory(&subset(&self.inner, &objects)?)
            .map_err(err)?;
        Ok(Category {
            inner: Arc::new(sub),
        })
    }

    fn __repr__(&self) -> String {
        format!("Category(objects={:?})", self.inner.objects())
    }
}

/// A group grading of a category, given by degrees on a chosen homogeneous basis.
#[pyclass(frozen, skip_from_py_object, module = "gradecat")]
#[derive(Clone)]
pub struct Grading {
    inner: gradecat::grading::Grading,
}

#[pymethods]
impl Grading {
    #[new]
    fn new(category: &Category, text: &str) -> PyResult<Self> {
        let v = schema::parse_json(text).map_err(err)?;
        let inner = schema::grading_from_json(&v, &category.inner).map_err(err)?;
        Ok(Grading { inner })
    }

    #[staticmethod]
    fn from_file(category: &Category, path: PathBuf) -> PyResult<Self> {
        let inner = schema::read_grading(&path, &category.inner).map_err(err)?;
        Ok(Grading { inner })
    }

    fn to_json(&self) -> String {
        schema::to_canonical(&schema::grading_to_json(&self.inner))
    }

    #[getter]
    fn category(&self) -> Category {
        Category {
            inner: self.inner.category().clone(),
        }
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let vs: Vec<Value> = self
            .inner
            .validate()
            .iter()
            .map(schema::violation_to_json)
            .collect();
        to_py(py, &Value::Array(vs))
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    #[pyo3(signature = (base=None))]
    fn walk_group<'py>(&self, py: Python<'py>, base: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let cat = self.inner.category();
        let (sub, v) = self.inner.walk_group(object(cat, base)?).map_err(err)?;
        let p = json!({
            "subgroup": payload::subgroup(&sub),
            "tree_degrees": payload::family(cat, self.inner.group(), &v),
        });
        to_py(py, &p)
    }

    #[pyo3(signature = (base=None))]
    fn is_connected(&self, base: Option<&str>) -> PyResult<bool> {
        let b0 = object(self.inner.category(), base)?;
        self.inner.is_connected_grading(b0).map_err(err)
    }

    fn restrict(&self, objects: Vec<String>) -> PyResult<Grading> {
        let objs = subset(self.inner.category(), &objects)?;
        Ok(Grading {
            inner: self.inner.restrict(&objs).map_err(err)?,
        })
    }

    /// The conjugating family and the connected grading it produces.
    #[pyo3(signature = (base=None))]
    fn base_component<'py>(
        &self,
        py: Python<'py>,
        base: Option<&str>,
    ) -> PyResult<(Bound<'py, PyAny>, Grading)> {
        let cat = self.inner.category();
        let (v, c) = self.inner.base_component(object(cat, base)?).map_err(err)?;
        let fam = to_py(py, &payload::family(cat, self.inner.group(), &v))?;
        Ok((fam, Grading { inner: c }))
    }

    /// The smash product as a category (finite groups only).
    fn smash(&self) -> PyResult<Category> {
        let s = smash_product(&self.inner).map_err(err)?;
        Ok(Category {
            inner: Arc::new(s.category().clone()),
        })
    }

    #[pyo3(signature = (base=None))]
    fn verify_galois<'py>(
        &self,
        py: Python<'py>,
        base: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let b0 = object(self.inner.category(), base)?;
        let s = smash_product(&self.inner).map_err(err)?;
        let r = s.verify_galois(b0);
        let p = json!({
            "galois": r.is_galois(),
            "connected": r.connected,
            "transitive": r.transitive,
            "free": r.free,
            "deck_automorphisms": r.deck_automorphisms,
            "star_isomorphism": s.verify_covering().is_empty(),
        });
        to_py(py, &p)
    }

    /// Extend this grading of the full subcategory on `objects` to `category`
    /// with trivial degrees outside it.
    fn extend_trivial<'py>(
        &self,
        py: Python<'py>,
        category: &Category,
        objects: Vec<String>,
    ) -> PyResult<(Bound<'py, PyAny>, Option<Grading>)> {
        let objs = subset(&category.inner, &objects)?;
        let ext = extend_trivial(&self.inner, &category.inner, &objs).map_err(err)?;
        let report = to_py(py, &schema::extension_to_json(&ext))?;
        let g = match ext {
            Extension::Extended(g) => Some(Grading { inner: g }),
            Extension::Diagnostic(_) => None,
        };
        Ok((report, g))
    }

    fn __repr__(&self) -> String {
        format!(
            "Grading(group={}, objects={:?})",
            schema::group_to_json(self.inner.group()),
            self.inner.category().objects()
        )
    }
}

/// Search for a covering morphism between the smash products of two gradings
/// over the identity of the category. Returns None when there is none.
#[pyfunction]
#[pyo3(signature = (source, target, base=None))]
fn find_morphism<'py>(
    py: Python<'py>,
    source: &Grading,
    target: &Grading,
    base: Option<&str>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let b0 = object(source.inner.category(), base)?;
    match find_identity_j_morphism(&source.inner, &target.inner, b0).map_err(err)? {
        Search::Found(m) => Ok(Some(to_py(py, &payload::morphism(&m).map_err(err)?)?)),
        Search::Absent(_) => Ok(None),
    }
}

/// Gradings of one category joined by the group maps of covering morphisms.
#[pyclass(frozen, module = "gradecat")]
pub struct Diagram {
    inner: GradingDiagram,
}

#[pymethods]
impl Diagram {
    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        Ok(Diagram {
            inner: schema::read_diagram(&path).map_err(err)?,
        })
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn describe<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &payload::diagram(&self.inner))
    }

    /// Group of compatible families.
    fn pi1<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let l = relative_pi1(&self.inner).map_err(err)?;
        to_py(py, &payload::limit(&l))
    }

    /// Map induced by restricting to the full subcategory on `objects`,
    /// whose own diagram is `sub`.
    fn kappa<'py>(
        &self,
        py: Python<'py>,
        objects: Vec<String>,
        sub: &Diagram,
    ) -> PyResult<Bound<'py, PyAny>> {
        let objs = subset(self.inner.category(), &objects)?;
        let k = kappa_relative(&self.inner, &objs, &sub.inner).map_err(err)?;
        to_py(py, &payload::kappa(&k, &self.inner, &sub.inner))
    }
}

#[pymodule]
fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Category>()?;
    m.add_class::<Grading>()?;
    m.add_class::<Diagram>()?;
    m.add_function(wrap_pyfunction!(find_morphism, m)?)?;
    m.add("GradecatError", m.py().get_type::<GradecatError>())?;
    Ok(())
}
