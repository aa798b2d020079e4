//! Python bindings: finite relations and transform tables, planar regions
//! and profile bodies, Gaussian measure runs and 1D grid transforms.
//! Subsets are passed as lists of labels.

use std::sync::Arc;

use orqi::finite::{
    self, CostRelation, Extension, OrqiVerdict, SubFamilyTransform, TransformTable,
};
use orqi::functional::{self, GridFunction};
use orqi::geometry::{self, Grid, PointSet, ProfileBody, Region};
use orqi::measure;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: orqi::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialize through `json.loads` so nested reports arrive as dicts and lists.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(json_err)?;
    py.import("json")?.call_method1("loads", (s,))
}

fn names(g: &finite::GroundSet, f: &[finite::SubsetMask]) -> Vec<Vec<String>> {
    f.iter().map(|m| g.names(*m)).collect()
}

#[pyclass(name = "CostRelation", module = "orqi_py", frozen)]
struct PyRelation {
    inner: CostRelation,
}

impl PyRelation {
    fn mask(&self, k: &[String]) -> PyResult<finite::SubsetMask> {
        self.inner.ground().mask(k).map_err(err)
    }
}

#[pymethods]
impl PyRelation {
    #[new]
    fn new(labels: Vec<String>, rel: Vec<Vec<bool>>) -> PyResult<Self> {
        let g = finite::GroundSet::new(labels).map_err(err)?;
        let inner = CostRelation::from_matrix(g, &rel).map_err(err)?;
        Ok(PyRelation { inner })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(s).map_err(json_err)?;
        Ok(PyRelation { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.ground().labels().to_vec()
    }

    fn related(&self, x: &str, y: &str) -> PyResult<bool> {
        let g = self.inner.ground();
        let (i, j) = (g.index_of(x).map_err(err)?, g.index_of(y).map_err(err)?);
        Ok(self.inner.related(i, j))
    }

    fn c_dual(&self, k: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.inner.ground().names(self.inner.c_dual(self.mask(&k)?)))
    }

    fn envelope(&self, k: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .ground()
            .names(self.inner.envelope(self.mask(&k)?)))
    }

    fn is_closed(&self, k: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.is_closed(self.mask(&k)?))
    }

    fn image_class(&self) -> PyResult<Vec<Vec<String>>> {
        let class = self.inner.image_class().map_err(err)?;
        Ok(names(self.inner.ground(), &class))
    }

    fn to_table(&self) -> PyResult<PyTable> {
        Ok(PyTable {
            inner: self.inner.to_table().map_err(err)?,
        })
    }

    /// The relation with every entry negated.
    fn dual(&self) -> PyRelation {
        PyRelation {
            inner: finite::dual_orqi(&self.inner),
        }
    }

    fn restrict(&self, m0: Vec<String>) -> PyResult<PyRelation> {
        let inner = finite::restrict(&self.inner, self.mask(&m0)?).map_err(err)?;
        Ok(PyRelation { inner })
    }

    fn x_zero(&self) -> Vec<String> {
        self.inner.ground().names(finite::x_zero(&self.inner))
    }

    /// `{"x_zero", "kind", "sets"}` with sets as label lists.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = finite::classify(&self.inner).map_err(err)?;
        let g = self.inner.ground();
        to_py(
            py,
            &serde_json::json!({
                "x_zero": g.names(c.x_zero),
                "kind": c.kind,
                "sets": names(g, &c.invariant_sets),
            }),
        )
    }

    fn maximal_almost_invariant(&self, k0: Vec<String>) -> PyResult<Vec<String>> {
        let k =
            finite::maximal_almost_invariant(&self.inner, self.mask(&k0)?, None).map_err(err)?;
        Ok(self.inner.ground().names(k))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyRelation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("CostRelation(labels={:?})", self.inner.ground().labels())
    }
}

#[pyclass(name = "TransformTable", module = "orqi_py", frozen)]
struct PyTable {
    inner: TransformTable,
}

#[pymethods]
impl PyTable {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(s).map_err(json_err)?;
        Ok(PyTable { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    fn apply(&self, k: Vec<String>) -> PyResult<Vec<String>> {
        let g = self.inner.ground();
        Ok(g.names(self.inner.apply(g.mask(&k).map_err(err)?)))
    }

    fn is_orqi(&self) -> bool {
        finite::is_orqi(&self.inner).holds()
    }

    /// Description of the first broken law, or `None` for an ORQI.
    fn violation(&self) -> Option<String> {
        match finite::is_orqi(&self.inner) {
            OrqiVerdict::Orqi => None,
            OrqiVerdict::Violated(v) => Some(v.to_string()),
        }
    }

    fn induced_relation(&self) -> PyResult<PyRelation> {
        let inner = finite::induced_relation(&self.inner).map_err(err)?;
        Ok(PyRelation { inner })
    }

    /// A family on which the lattice law fails, or `None` when it holds on all.
    fn lattice_law_exhaustive(&self) -> PyResult<Option<Vec<Vec<String>>>> {
        let f = finite::lattice_law_exhaustive(&self.inner).map_err(err)?;
        Ok(f.map(|f| names(self.inner.ground(), &f)))
    }

    fn complement_conjugate(&self) -> PyTable {
        PyTable {
            inner: finite::complement_conjugate(&self.inner),
        }
    }

    fn __eq__(&self, other: &PyTable) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("TransformTable(labels={:?})", self.inner.ground().labels())
    }
}

#[pyfunction]
fn intersect(rels: Vec<PyRef<'_, PyRelation>>) -> PyResult<PyRelation> {
    let rels: Vec<CostRelation> = rels.iter().map(|r| r.inner.clone()).collect();
    let inner = finite::intersect_orqis(&rels).map_err(err)?;
    Ok(PyRelation { inner })
}

/// Extend a transform on a sub-family (JSON with labels, domain, map).
/// Returns `{"extendable": true, "relation": ...}` or the failing cover.
#[pyfunction]
fn extend<'py>(py: Python<'py>, subfamily_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let t: SubFamilyTransform = serde_json::from_str(subfamily_json).map_err(json_err)?;
    let g = t.ground();
    let v = match finite::extend_from_subclass(&t).map_err(err)? {
        Extension::Relation(rel) => serde_json::json!({"extendable": true, "relation": rel}),
        Extension::NotExtendable { witness: w } => serde_json::json!({
            "extendable": false,
            "set": g.names(w.set),
            "cover": names(g, &w.cover),
            "image": g.names(w.image),
            "cover_meet": g.names(w.cover_meet),
        }),
    };
    to_py(py, &v)
}

#[pyclass(name = "Region", module = "orqi_py", frozen)]
struct PyRegion {
    inner: Arc<dyn Region>,
}

impl PyRegion {
    fn wrap(r: impl Region + 'static) -> Self {
        PyRegion { inner: Arc::new(r) }
    }

    fn check(&self, y: &[f64]) -> PyResult<()> {
        if y.len() != self.inner.dim() {
            return Err(err(orqi::Error::Dimension {
                expected: self.inner.dim(),
                got: y.len(),
            }));
        }
        Ok(())
    }
}

#[pymethods]
impl PyRegion {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn contains(&self, y: Vec<f64>) -> PyResult<bool> {
        self.check(&y)?;
        Ok(self.inner.contains(&y))
    }

    /// Positive inside, negative outside.
    fn slack(&self, y: Vec<f64>) -> PyResult<f64> {
        self.check(&y)?;
        Ok(self.inner.slack(&y))
    }

    fn contains_many(&self, ys: Vec<Vec<f64>>) -> PyResult<Vec<bool>> {
        ys.iter()
            .map(|y| self.check(y).map(|_| self.inner.contains(y)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Region(dim={})", self.inner.dim())
    }
}

fn points(p: Vec<Vec<f64>>) -> PyResult<PointSet> {
    PointSet::from_rows(&p).map_err(err)
}

#[pyfunction]
fn polar(p: Vec<Vec<f64>>) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(geometry::polar(&points(p)?).map_err(err)?))
}

#[pyfunction]
fn dual_polar(p: Vec<Vec<f64>>) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(
        geometry::dual_polar(&points(p)?).map_err(err)?,
    ))
}

#[pyfunction]
fn flower_dual(p: Vec<Vec<f64>>) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(
        geometry::flower_dual(&points(p)?).map_err(err)?,
    ))
}

#[pyfunction]
fn ball_intersection(p: Vec<Vec<f64>>, eps: f64) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(
        geometry::ball_intersection(&points(p)?, eps).map_err(err)?,
    ))
}

#[pyfunction]
fn neighborhood_complement(p: Vec<Vec<f64>>, eps: f64) -> PyResult<PyRegion> {
    let r = geometry::neighborhood_complement(&points(p)?, eps, geometry::Metric::Euclidean)
        .map_err(err)?;
    Ok(PyRegion::wrap(r))
}

#[pyfunction]
fn reciprocal_type(p: Vec<Vec<f64>>, lam: f64) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(
        geometry::reciprocal_type(&points(p)?, lam).map_err(err)?,
    ))
}

#[pyfunction]
fn unconditional_dual(p: Vec<Vec<f64>>) -> PyResult<PyRegion> {
    Ok(PyRegion::wrap(
        geometry::unconditional_dual(&points(p)?).map_err(err)?,
    ))
}

/// Fraction of grid points on `[lo, hi]^dim` where both regions agree,
/// skipping a thin band around either boundary.
#[pyfunction]
fn agreement(a: &PyRegion, b: &PyRegion, lo: f64, hi: f64, per_axis: usize) -> PyResult<f64> {
    if a.inner.dim() != b.inner.dim() {
        return Err(err(orqi::Error::Dimension {
            expected: a.inner.dim(),
            got: b.inner.dim(),
        }));
    }
    let g = Grid::cube(a.inner.dim(), lo, hi, per_axis);
    let r = geometry::agreement(a.inner.as_ref(), b.inner.as_ref(), &g, 1e-9 * g.scale());
    Ok(r.fraction)
}

#[pyclass(name = "ProfileBody", module = "orqi_py", frozen)]
struct PyProfileBody {
    inner: ProfileBody,
}

#[pymethods]
impl PyProfileBody {
    #[staticmethod]
    fn k0() -> Self {
        PyProfileBody {
            inner: ProfileBody::k0(),
        }
    }

    #[staticmethod]
    fn k1() -> Self {
        PyProfileBody {
            inner: ProfileBody::k1(),
        }
    }

    #[staticmethod]
    fn k2() -> Self {
        PyProfileBody {
            inner: ProfileBody::k2(),
        }
    }

    #[staticmethod]
    fn symmetric(a: f64, beta: f64) -> PyResult<Self> {
        let inner = ProfileBody::symmetric(a, beta).map_err(err)?;
        Ok(PyProfileBody { inner })
    }

    #[staticmethod]
    fn random(seed: u64) -> Self {
        PyProfileBody {
            inner: ProfileBody::random(seed),
        }
    }

    /// Piecewise linear profile through `(nodes[i], values[i])`, `+inf` outside.
    #[staticmethod]
    fn from_samples(nodes: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        let inner = ProfileBody::from_samples(nodes, values).map_err(err)?;
        Ok(PyProfileBody { inner })
    }

    fn phi(&self, x: f64) -> f64 {
        self.inner.phi(x)
    }

    fn dual_phi(&self, y: f64) -> f64 {
        self.inner.dual_profile_at(y)
    }

    fn region(&self) -> PyRegion {
        PyRegion::wrap(self.inner.region())
    }

    fn dual(&self) -> PyRegion {
        PyRegion::wrap(self.inner.dual())
    }

    fn self_duality(&self, lo: f64, hi: f64, per_axis: usize) -> f64 {
        geometry::self_duality(&self.inner, &Grid::cube(2, lo, hi, per_axis)).fraction
    }

    fn tilde_j_agreement(&self, lo: f64, hi: f64, per_axis: usize) -> f64 {
        geometry::tilde_j_polar_agreement(&self.inner, &Grid::cube(2, lo, hi, per_axis)).fraction
    }
}

/// `(mean, stderr)` of the standard Gaussian measure of a region.
#[pyfunction]
fn gaussian_measure(region: &PyRegion, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
    let e = measure::gaussian_measure(region.inner.as_ref(), samples, seed).map_err(err)?;
    Ok((e.mean, e.stderr))
}

#[pyfunction]
fn bs_experiment<'py>(
    py: Python<'py>,
    body: &PyProfileBody,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = measure::bs_experiment(&body.inner, samples, seed).map_err(err)?;
    to_py(py, &r)
}

fn line(lo: f64, hi: f64, values: Vec<f64>) -> PyResult<GridFunction> {
    GridFunction::new(Grid::cube(1, lo, hi, values.len()), values).map_err(err)
}

/// Discrete Legendre transform of samples on `n` equally spaced nodes of `[lo, hi]`,
/// evaluated on the same nodes.
#[pyfunction]
fn legendre_1d(lo: f64, hi: f64, values: Vec<f64>) -> PyResult<Vec<f64>> {
    let f = functional::legendre(&line(lo, hi, values)?).map_err(err)?;
    Ok(f.values().to_vec())
}

#[pyfunction]
fn a_transform_1d(lo: f64, hi: f64, values: Vec<f64>) -> PyResult<Vec<f64>> {
    let f = functional::a_transform(&line(lo, hi, values)?).map_err(err)?;
    Ok(f.values().to_vec())
}

#[pyfunction]
fn dual_polar_functional_1d(lo: f64, hi: f64, values: Vec<f64>) -> PyResult<Vec<f64>> {
    let f = functional::dual_polar_functional(&line(lo, hi, values)?).map_err(err)?;
    Ok(f.values().to_vec())
}

#[pymodule]
fn orqi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRelation>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyRegion>()?;
    m.add_class::<PyProfileBody>()?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(polar, m)?)?;
    m.add_function(wrap_pyfunction!(dual_polar, m)?)?;
    m.add_function(wrap_pyfunction!(flower_dual, m)?)?;
    m.add_function(wrap_pyfunction!(ball_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood_complement, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal_type, m)?)?;
    m.add_function(wrap_pyfunction!(unconditional_dual, m)?)?;
    m.add_function(wrap_pyfunction!(agreement, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_measure, m)?)?;
    m.add_function(wrap_pyfunction!(bs_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_1d, m)?)?;
    m.add_function(wrap_pyfunction!(a_transform_1d, m)?)?;
    m.add_function(wrap_pyfunction!(dual_polar_functional_1d, m)?)?;
    Ok(())
}
