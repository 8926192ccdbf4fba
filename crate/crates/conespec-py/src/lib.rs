//! Python bindings for the `conespec` library.
//!
//! Builds as the extension module `conespec_py`. Structured results come
//! back as plain dicts/lists with the same field names the CLI prints in
//! JSON, so notebook code and shell pipelines see identical numbers.
//!
//! ```python
//! import conespec_py as cs
//!
//! model = cs.Model.from_catalog("round-sphere")
//! gap = cs.lambda1(model, cells=2000)
//! bound = cs.gap_bound(n=3, k=2.0, kappa=1.0, ell=1.0)
//! assert gap["lambda1"] >= bound["lambda1_bound"] - 1e-6
//! ```

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyList, PyString};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use conespec::bochner::{
    be1_pointwise_check, find_hypothesis_violation, fuzz_inequalities, BochnerInstance, SymMat,
};
use conespec::eigen::spindle_lambda1_forced;
use conespec::estimates;
use conespec::hardy::{
    best_constant_estimate, combine_weights, CompositeHardyWeight, HardyWeight,
};
use conespec::modelfile::{load_model, parse_model, save_model, serialize_model};
use conespec::models::{self, ConicalManifoldModel, GrushinMeasure};
use conespec::radial::{BoundaryCondition, Grid};
use conespec::scalar;
use conespec::Error;

/// Maps library errors onto Python exceptions: domain/model problems are
/// `ValueError`s (the caller passed something wrong), file trouble is
/// `IOError`, and everything else (non-convergence, solver guards, internal
/// cross-check failures) is a `RuntimeError`.
fn py_err(err: Error) -> PyErr {
    match &err {
        Error::Io { .. } => PyIOError::new_err(err.to_string()),
        Error::Domain(_) | Error::Model(_) => PyValueError::new_err(err.to_string()),
        _ => PyRuntimeError::new_err(err.to_string()),
    }
}

fn json_to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().unbind().into_any(),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                i.into_pyobject(py)?.unbind().into_any()
            } else if let Some(u) = num.as_u64() {
                u.into_pyobject(py)?.unbind().into_any()
            } else {
                PyFloat::new(py, num.as_f64().unwrap_or(f64::NAN))
                    .unbind()
                    .into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).unbind().into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.unbind().into_any()
        }
    })
}

/// Serializes a library result struct and rebuilds it as Python objects.
/// Non-finite floats become `None`, matching the CLI's JSON output.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &json)
}

fn sym_mat_from_rows(label: &str, rows: Vec<Vec<f64>>) -> PyResult<SymMat> {
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for row in &rows {
        if row.len() != n {
            return Err(PyValueError::new_err(format!(
                "{label} must be a square matrix given as {n} rows of {n} entries"
            )));
        }
        flat.extend_from_slice(row);
    }
    SymMat::from_rows(n, flat).map_err(py_err)
}

/// A warped-product cone or spindle model: the ambient dimension, a bulk
/// Ricci lower bound, and one or two conical caps with their cross-sections.
///
/// Instances are immutable; build them from the catalog, a model file, or
/// the `closed_spindle` / `finite_cone` constructors.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Model {
    inner: ConicalManifoldModel,
}

#[pymethods]
impl Model {
    /// Looks up a named example from the built-in catalog.
    ///
    /// Raises:
    ///     ValueError: if the name is unknown (the message lists the
    ///         available names).
    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Model> {
        for entry in models::catalog() {
            if entry.name == name {
                return Ok(Model { inner: entry.model });
            }
        }
        let names: Vec<String> = models::catalog().into_iter().map(|e| e.name).collect();
        Err(PyValueError::new_err(format!(
            "unknown catalog model {name:?}; available: {}",
            names.join(", ")
        )))
    }

    /// Loads a model from a model file on disk.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Model> {
        let inner = load_model(std::path::Path::new(path)).map_err(py_err)?;
        Ok(Model { inner })
    }

    /// Parses a model from model-file text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Model> {
        let inner = parse_model(text, None).map_err(py_err)?;
        Ok(Model { inner })
    }

    /// Builds the closed spindle over a round sphere section: the warped
    /// product of [0, pi/sqrt(ell)] with the sphere S^{n-1} of the given
    /// radius. With `section_radius=None` the radius defaults to
    /// 1/sqrt(ell), which is the round sphere of curvature ell.
    #[staticmethod]
    #[pyo3(signature = (n, ell, section_radius=None))]
    fn closed_spindle(n: u32, ell: f64, section_radius: Option<f64>) -> PyResult<Model> {
        if !(ell > 0.0) {
            return Err(PyValueError::new_err(format!(
                "closed spindles need ell > 0, got {ell}"
            )));
        }
        let radius = section_radius.unwrap_or(1.0 / ell.sqrt());
        let section = models::sphere_section(n, radius).map_err(py_err)?;
        let inner = ConicalManifoldModel::closed_spindle(n, ell, section).map_err(py_err)?;
        Ok(Model { inner })
    }

    /// Builds a finite cone of radius `rho` over a round sphere section,
    /// with curvature parameter `ell`, bulk Ricci bound `bulk_k`, and outer
    /// boundary condition `"natural"` or `"dirichlet"`.
    #[staticmethod]
    #[pyo3(signature = (n, ell, rho, section_radius, bulk_k=0.0, outer_bc="natural"))]
    fn finite_cone(
        n: u32,
        ell: f64,
        rho: f64,
        section_radius: f64,
        bulk_k: f64,
        outer_bc: &str,
    ) -> PyResult<Model> {
        let bc = match outer_bc {
            "natural" => BoundaryCondition::Natural,
            "dirichlet" => BoundaryCondition::Dirichlet,
            other => {
                return Err(PyValueError::new_err(format!(
                    "outer_bc must be \"natural\" or \"dirichlet\", got {other:?}"
                )))
            }
        };
        let section = models::sphere_section(n, section_radius).map_err(py_err)?;
        let inner =
            ConicalManifoldModel::finite_cone(n, ell, rho, section, bc, bulk_k).map_err(py_err)?;
        Ok(Model { inner })
    }

    /// Writes the model to a model file.
    fn save(&self, path: &str) -> PyResult<()> {
        save_model(std::path::Path::new(path), &self.inner).map_err(py_err)
    }

    /// Serializes the model to model-file text.
    fn to_text(&self) -> PyResult<String> {
        serialize_model(&self.inner).map_err(py_err)
    }

    /// Returns the model as a nested dict (same shape as the CLI JSON).
    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner)
    }

    /// Ambient dimension n.
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    /// Bulk Ricci lower bound K.
    #[getter]
    fn bulk_k(&self) -> f64 {
        self.inner.bulk_k
    }

    /// Number of conical caps (1 for a cone, 2 for a spindle).
    #[getter]
    fn cap_count(&self) -> usize {
        self.inner.caps.len()
    }

    /// True when the computable realization is a closed spindle.
    fn is_closed_spindle(&self) -> bool {
        self.inner.is_closed_spindle()
    }

    /// Length of the computable radial interval.
    fn total_length(&self) -> PyResult<f64> {
        Ok(self.inner.spindle_view().map_err(py_err)?.total_length)
    }

    fn __repr__(&self) -> String {
        let kind = if self.inner.is_closed_spindle() {
            "closed spindle"
        } else {
            "cone"
        };
        format!(
            "Model(n={}, bulk_k={}, caps={}, {})",
            self.inner.n,
            self.inner.bulk_k,
            self.inner.caps.len(),
            kind
        )
    }
}

/// Lists the built-in example models.
///
/// Returns:
///     list[dict]: one entry per model with its name, headline parameters,
///     and free-text notes.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Py<PyAny>> {
    #[derive(Serialize)]
    struct Row {
        name: String,
        n: u32,
        bulk_k: f64,
        caps: usize,
        closed_spindle: bool,
        notes: Vec<String>,
    }
    let rows: Vec<Row> = models::catalog()
        .into_iter()
        .map(|e| Row {
            name: e.name,
            n: e.model.n,
            bulk_k: e.model.bulk_k,
            caps: e.model.caps.len(),
            closed_spindle: e.model.is_closed_spindle(),
            notes: e.notes,
        })
        .collect();
    to_py(py, &rows)
}

/// The three section radii of the dimension-3 taming family, where the
/// negative-part form bound crosses 3/2, 1, and 1/2.
#[pyfunction]
fn taming_radii(py: Python<'_>) -> PyResult<Py<PyAny>> {
    #[derive(Serialize)]
    struct Row {
        name: String,
        radius: f64,
    }
    let rows: Vec<Row> = models::taming_radii()
        .into_iter()
        .map(|(name, radius)| Row { name, radius })
        .collect();
    to_py(py, &rows)
}

/// Computes the first nonzero eigenvalue of the model by separation of
/// variables and a 1-D weighted eigensolve per mode.
///
/// Args:
///     model: the cone/spindle model to solve.
///     cells: radial cells on the coarse grid (the solver also runs a
///         2x-refined grid and reports the refined value).
///     min_modes: force the mode sweep through at least this many modes.
///
/// Returns:
///     dict with `lambda1`, `binding_mode`, `modes_scanned`, `mesh_cells`,
///     `convergence_estimate`, and `residual`.
#[pyfunction]
#[pyo3(signature = (model, cells=2000, min_modes=0))]
fn lambda1(py: Python<'_>, model: &Model, cells: usize, min_modes: usize) -> PyResult<Py<PyAny>> {
    let view = model.inner.spindle_view().map_err(py_err)?;
    let grid = Grid::uniform(0.0, view.total_length, cells.max(64)).map_err(py_err)?;
    let numeric = spindle_lambda1_forced(&model.inner, &grid, min_modes).map_err(py_err)?;
    to_py(py, &numeric)
}

/// Runs the full comparison chain on the model: closed-form gap bound,
/// numeric eigenvalue, and the inequality links between them.
///
/// Args:
///     model: the cone/spindle model to verify.
///     cells: radial cells for the eigensolves.
///     ts: extra diagnostic transform parameters to evaluate alongside the
///         theorem value.
///
/// Returns:
///     dict with the chain links, the verdict, and any notes.
#[pyfunction]
#[pyo3(signature = (model, cells=1200, ts=vec![]))]
fn verify(py: Python<'_>, model: &Model, cells: usize, ts: Vec<f64>) -> PyResult<Py<PyAny>> {
    let view = model.inner.spindle_view().map_err(py_err)?;
    let grid = Grid::uniform(0.0, view.total_length, cells.max(64)).map_err(py_err)?;
    let report = estimates::verify_chain_with_ts(&model.inner, &grid, &ts).map_err(py_err)?;
    to_py(py, &report)
}

/// Build the model's Hardy weight: one cap uses the single weight with
/// s = 1; two caps (spindle poles) combine with s = 1/2 each, anchored at
/// opposite ends of the radial interval.
fn cap_weight_combination(
    model: &ConicalManifoldModel,
    clamp: Option<f64>,
) -> conespec::Result<CompositeHardyWeight> {
    match model.caps.len() {
        1 => Ok(CompositeHardyWeight::single(HardyWeight::for_cap(
            &model.caps[0],
            clamp,
        )?)),
        2 => {
            let w0 = HardyWeight::for_cap(&model.caps[0], clamp)?;
            let w1 = HardyWeight::for_cap(&model.caps[1], clamp)?;
            combine_weights(vec![(w0, 0.5, 0), (w1, 0.5, 1)])
        }
        k => Err(Error::Domain(format!(
            "the 1-D Hardy check supports 1 or 2 caps, the model has {k}"
        ))),
    }
}

/// Checks nonnegativity of the Hardy-weighted quadratic form on the model,
/// mode by mode.
///
/// Args:
///     model: the cone/spindle model to check.
///     clamp: optional curvature clamp passed to the weight.
///     modes: number of cross-section modes to test.
///     cells: radial cells (cone models grade the grid into the tip).
///
/// Returns:
///     dict with per-mode minimal eigenvalues, the binding mode, and the
///     overall pass flag.
#[pyfunction]
#[pyo3(signature = (model, clamp=None, modes=5, cells=3000))]
fn hardy_check(
    py: Python<'_>,
    model: &Model,
    clamp: Option<f64>,
    modes: usize,
    cells: usize,
) -> PyResult<Py<PyAny>> {
    let weight = cap_weight_combination(&model.inner, clamp).map_err(py_err)?;
    let view = model.inner.spindle_view().map_err(py_err)?;
    let grid = if model.inner.caps.len() >= 2 {
        Grid::uniform(0.0, view.total_length, cells.max(64))
    } else {
        Grid::geometric(0.0, view.total_length, cells.max(64), view.total_length * 1e-12)
    }
    .map_err(py_err)?;
    let verification =
        conespec::hardy::verify_hardy(&weight, &model.inner, &grid, modes).map_err(py_err)?;
    to_py(py, &verification)
}

/// Estimates the best constant in the radial Hardy inequality by minimizing
/// the discrete Rayleigh quotient on a tip-graded grid. Converges to
/// (n-2)^2/4 from above as the grid deepens.
///
/// Args:
///     n: ambient dimension (needs n >= 3).
///     ell: curvature parameter of the comparison cone.
///     cells: number of radial cells.
///     depth: first-cell size as a fraction of the outer radius; refining
///         the estimate means shrinking this together with adding cells.
#[pyfunction]
#[pyo3(signature = (n, ell=0.0, cells=20_000, depth=1e-21))]
fn best_constant(n: u32, ell: f64, cells: usize, depth: f64) -> PyResult<f64> {
    let grid = Grid::geometric(0.0, 1.0e3, cells, depth).map_err(py_err)?;
    best_constant_estimate(n, ell, &grid).map_err(py_err)
}

/// Closed-form spectral-gap lower bound for a single-cap model.
///
/// Args:
///     n: ambient dimension.
///     k: bulk Ricci lower bound K.
///     kappa: section curvature bound.
///     ell: cap curvature parameter.
///     rho: cap radius; `None` uses the comparison radius pi/(2 sqrt(ell)),
///         which requires ell > 0.
///
/// Returns:
///     dict with the bound, the branch taken, and the derivation pieces.
#[pyfunction]
#[pyo3(signature = (n, k, kappa, ell, rho=None))]
fn gap_bound(
    py: Python<'_>,
    n: u32,
    k: f64,
    kappa: f64,
    ell: f64,
    rho: Option<f64>,
) -> PyResult<Py<PyAny>> {
    let rho = match rho {
        Some(r) => r,
        None => {
            let r = scalar::comparison_radius(ell);
            if !r.is_finite() {
                return Err(PyValueError::new_err(format!(
                    "rho=None needs ell > 0 for a finite comparison radius, got ell = {ell}"
                )));
            }
            r
        }
    };
    let report = estimates::gap_bound_single(n, k, kappa, ell, rho).map_err(py_err)?;
    to_py(py, &report)
}

/// Closed-form spectral-gap lower bound for a model with several caps.
///
/// Args:
///     n: ambient dimension.
///     k: bulk Ricci lower bound K.
///     caps: list of `(ell, rho, kappa)` triples, one per cap.
#[pyfunction]
fn gap_bound_multi(
    py: Python<'_>,
    n: u32,
    k: f64,
    caps: Vec<(f64, f64, f64)>,
) -> PyResult<Py<PyAny>> {
    let caps: Vec<estimates::CapParams> = caps
        .into_iter()
        .map(|(ell, rho, kappa)| estimates::CapParams { ell, rho, kappa })
        .collect();
    let report = estimates::gap_bound_multi(n, k, &caps).map_err(py_err)?;
    to_py(py, &report)
}

/// Spectral-gap lower bound from Hardy form bounds alone: each cap
/// contributes a form-bound constant `s`, and `separated=True` asserts the
/// caps have disjoint supports.
#[pyfunction]
#[pyo3(signature = (n, k, s_list, separated=false))]
fn gap_bound_hardy(n: u32, k: f64, s_list: Vec<f64>, separated: bool) -> PyResult<f64> {
    estimates::gap_bound_hardy(n, k, &s_list, separated).map_err(py_err)
}

/// Decides admissibility of a section for the sharp gap estimate in
/// dimension n, reporting both the literal threshold test and its
/// recomputed form.
#[pyfunction]
fn admissibility(py: Python<'_>, n: u32, kappa: f64, lambda1_section: f64) -> PyResult<Py<PyAny>> {
    let verdict = estimates::admissibility(n, kappa, lambda1_section).map_err(py_err)?;
    to_py(py, &verdict)
}

/// The admissibility and taming thresholds for dimension n, as exact
/// floating-point values.
#[pyfunction]
#[pyo3(signature = (n=3))]
fn taming_thresholds(py: Python<'_>, n: u32) -> PyResult<Py<PyAny>> {
    let thresholds = estimates::taming_thresholds(n).map_err(py_err)?;
    to_py(py, &thresholds)
}

/// Fuzzes the pointwise curvature-dimension inequalities on random
/// instances, and (optionally) searches for a violation once the curvature
/// hypothesis is dropped.
///
/// Args:
///     count: number of random instances.
///     max_dim: largest matrix dimension to sample.
///     seed: RNG seed (fixed seed = reproducible report).
///     search_violation: also look for a counterexample with the
///         hypothesis R >= k I removed.
///
/// Returns:
///     dict with the fuzz report and, if requested, the violation found.
#[pyfunction]
#[pyo3(signature = (count=10_000, max_dim=6, seed=42, search_violation=true))]
fn bochner_fuzz(
    py: Python<'_>,
    count: u64,
    max_dim: usize,
    seed: u64,
    search_violation: bool,
) -> PyResult<Py<PyAny>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fuzz = fuzz_inequalities(&mut rng, count, max_dim).map_err(py_err)?;
    let violation = if search_violation {
        Some(find_hypothesis_violation(&mut rng, 10_000).map_err(py_err)?)
    } else {
        None
    };
    #[derive(Serialize)]
    struct Payload {
        fuzz: conespec::bochner::FuzzReport,
        violation: Option<conespec::bochner::ViolationReport>,
    }
    to_py(py, &Payload { fuzz, violation })
}

/// Pointwise slack of the tensorized curvature-dimension inequality on one
/// explicit instance.
///
/// Args:
///     nn: effective dimension N (needs N >= matrix dimension).
///     g: gradient vector.
///     h: Hessian, as a list of rows (must be symmetric).
///     r: Ricci tensor, as a list of rows (must be symmetric).
///     k: curvature lower bound, with r - k*I expected nonnegative.
///
/// Returns:
///     float: the slack; nonnegative when the inequality holds.
#[pyfunction]
fn be1_slack(nn: f64, g: Vec<f64>, h: Vec<Vec<f64>>, r: Vec<Vec<f64>>, k: f64) -> PyResult<f64> {
    let h = sym_mat_from_rows("h", h)?;
    let r = sym_mat_from_rows("r", r)?;
    let inst = BochnerInstance::new(nn, g, h, r, k).map_err(py_err)?;
    be1_pointwise_check(&inst).map_err(py_err)
}

/// Generalized sine: sin(sqrt(ell) r)/sqrt(ell), linear at ell = 0,
/// hyperbolic for ell < 0.
#[pyfunction]
fn sin_ell(ell: f64, r: f64) -> f64 {
    scalar::sin_ell(ell, r)
}

/// Generalized cosine, the derivative of `sin_ell`.
#[pyfunction]
fn cos_ell(ell: f64, r: f64) -> f64 {
    scalar::cos_ell(ell, r)
}

/// Radius pi/(2 sqrt(ell)) where `cos_ell` first vanishes; infinite for
/// ell <= 0.
#[pyfunction]
fn comparison_radius(ell: f64) -> f64 {
    scalar::comparison_radius(ell)
}

/// The monotone gap 1/sin_ell(r)^2 - 1/sin_L(r)^2 + (L - ell), evaluated
/// stably for small r.
#[pyfunction]
fn tan_gap(ell: f64, ell_big: f64, r: f64) -> PyResult<f64> {
    scalar::tan_gap(ell, ell_big, r).map_err(py_err)
}

/// Radial Ricci lower bound of the ell-cone over a section of curvature
/// >= kappa, at radius r.
#[pyfunction]
fn ricci_bound_cone(n: u32, ell: f64, kappa: f64, r: f64) -> PyResult<f64> {
    models::ricci_bound_cone(n, ell, kappa, r).map_err(py_err)
}

/// Radial Ricci lower bound of a general warped product with warping value
/// f, derivative df, and second derivative ddf at radius r.
#[pyfunction]
fn ricci_bound_warped(n: u32, f: f64, df: f64, ddf: f64, kappa: f64, r: f64) -> PyResult<f64> {
    models::ricci_bound_warped(n, f, df, ddf, kappa, r).map_err(py_err)
}

/// Bakry-Emery Ricci lower bound of R^n weighted by |x|^(-alpha), at
/// distance x_norm from the origin.
#[pyfunction]
fn weighted_space_bound(n: u32, alpha: f64, x_norm: f64) -> PyResult<f64> {
    models::weighted_space_bound(n, alpha, x_norm).map_err(py_err)
}

/// Ricci-type lower bound of the Grushin half-model at |y| = y_norm, with
/// measure "riemannian" or "lebesgue".
#[pyfunction]
#[pyo3(signature = (n, j, alpha, y_norm, measure="riemannian"))]
fn grushin_bound(n: u32, j: u32, alpha: f64, y_norm: f64, measure: &str) -> PyResult<f64> {
    let measure = match measure {
        "riemannian" => GrushinMeasure::Riemannian,
        "lebesgue" => GrushinMeasure::Lebesgue,
        other => {
            return Err(PyValueError::new_err(format!(
                "measure must be \"riemannian\" or \"lebesgue\", got {other:?}"
            )))
        }
    };
    models::grushin_bound(n, j, alpha, y_norm, measure).map_err(py_err)
}

/// Admissibility of the Grushin exponent alpha: the literal threshold test
/// next to an independently recomputed one, with their discrepancy.
#[pyfunction]
fn grushin_admissibility(py: Python<'_>, n: u32, j: u32, alpha: f64) -> PyResult<Py<PyAny>> {
    let verdict = models::grushin_admissibility(n, j, alpha).map_err(py_err)?;
    to_py(py, &verdict)
}

#[pymodule]
fn conespec_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(taming_radii, m)?)?;
    m.add_function(wrap_pyfunction!(lambda1, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_check, m)?)?;
    m.add_function(wrap_pyfunction!(best_constant, m)?)?;
    m.add_function(wrap_pyfunction!(gap_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gap_bound_multi, m)?)?;
    m.add_function(wrap_pyfunction!(gap_bound_hardy, m)?)?;
    m.add_function(wrap_pyfunction!(admissibility, m)?)?;
    m.add_function(wrap_pyfunction!(taming_thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(bochner_fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(be1_slack, m)?)?;
    m.add_function(wrap_pyfunction!(sin_ell, m)?)?;
    m.add_function(wrap_pyfunction!(cos_ell, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_radius, m)?)?;
    m.add_function(wrap_pyfunction!(tan_gap, m)?)?;
    m.add_function(wrap_pyfunction!(ricci_bound_cone, m)?)?;
    m.add_function(wrap_pyfunction!(ricci_bound_warped, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_space_bound, m)?)?;
    m.add_function(wrap_pyfunction!(grushin_bound, m)?)?;
    m.add_function(wrap_pyfunction!(grushin_admissibility, m)?)?;
    Ok(())
}
