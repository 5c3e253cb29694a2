//! Python bindings for `clustereval`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use clustereval::aggregate::{EvaluationReport, UnmappedPolicy};
use clustereval::mapping::{self, FTable, MappingResult};
use clustereval::metrics::{self, ContingencyTable, Scores};
use clustereval::model::{self, normalize_word, Clustering, ExpertHierarchy, FlattenMode, MemberSet};
use clustereval::testkit::{self, GenSpec};
use clustereval::{pipeline, EvalConfig};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn flatten_mode(s: &str) -> PyResult<FlattenMode> {
    match s {
        "inherit" => Ok(FlattenMode::Inherit),
        "own-only" => Ok(FlattenMode::OwnOnly),
        other => Err(PyValueError::new_err(format!(
            "flatten must be 'inherit' or 'own-only', got {other:?}"
        ))),
    }
}

fn unmapped_policy(s: &str) -> PyResult<UnmappedPolicy> {
    match s {
        "all-columns" => Ok(UnmappedPolicy::AllColumns),
        "top-level" => Ok(UnmappedPolicy::TopLevel),
        "leaves" => Ok(UnmappedPolicy::Leaves),
        other => Err(PyValueError::new_err(format!(
            "unmapped_cols must be 'all-columns', 'top-level' or 'leaves', got {other:?}"
        ))),
    }
}

#[pyclass(name = "Clustering", module = "pyclustereval", frozen)]
pub struct PyClustering {
    inner: Clustering,
}

#[pymethods]
impl PyClustering {
    /// Build from `(label, members)` pairs.
    #[new]
    #[pyo3(signature = (classes, name=None))]
    fn new(classes: Vec<(String, Vec<String>)>, name: Option<String>) -> PyResult<Self> {
        let classes = classes
            .into_iter()
            .map(|(label, members)| model::LabeledClass::new(label, members))
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_err)?;
        let inner = Clustering::new(name, classes).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        model::parse_clustering(text).map(|inner| Self { inner }).map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().map(str::to_string).collect()
    }

    fn classes(&self) -> Vec<(String, Vec<String>)> {
        self.inner
            .classes
            .iter()
            .map(|c| (c.label.clone(), c.members.iter().cloned().collect()))
            .collect()
    }

    fn is_partition(&self) -> bool {
        self.inner.is_partition()
    }

    fn incidence_count(&self) -> usize {
        self.inner.incidence_count()
    }

    fn __len__(&self) -> usize {
        self.inner.classes.len()
    }

    fn __repr__(&self) -> String {
        format!("Clustering(name={:?}, classes={})", self.inner.name, self.inner.classes.len())
    }
}

#[pyclass(name = "ExpertHierarchy", module = "pyclustereval", frozen)]
pub struct PyExpertHierarchy {
    inner: ExpertHierarchy,
}

#[pymethods]
impl PyExpertHierarchy {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        model::parse_hierarchy(text).map(|inner| Self { inner }).map_err(value_err)
    }

    /// Flat hierarchy whose roots are the classes of `clustering`.
    #[staticmethod]
    fn from_clustering(clustering: &PyClustering) -> Self {
        Self {
            inner: ExpertHierarchy::flat(clustering.inner.clone()),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// Pre-order `(path, members)` columns.
    #[pyo3(signature = (flatten="inherit"))]
    fn columns(&self, flatten: &str) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
        let cols = model::flatten(&self.inner, flatten_mode(flatten)?).map_err(value_err)?;
        Ok(cols
            .columns
            .into_iter()
            .map(|c| (c.path, c.members.into_iter().collect()))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "ExpertHierarchy(name={:?}, nodes={}, depth={})",
            self.inner.name,
            self.inner.node_count(),
            self.inner.depth()
        )
    }
}

#[pyclass(name = "ContingencyTable", module = "pyclustereval", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyContingencyTable {
    inner: ContingencyTable,
}

#[pymethods]
impl PyContingencyTable {
    #[new]
    fn new(yy: usize, yn: usize, ny: usize) -> Self {
        Self {
            inner: ContingencyTable::new(yy, yn, ny),
        }
    }

    #[getter]
    fn yy(&self) -> usize {
        self.inner.yy
    }

    #[getter]
    fn yn(&self) -> usize {
        self.inner.yn
    }

    #[getter]
    fn ny(&self) -> usize {
        self.inner.ny
    }

    fn scores(&self) -> PyScores {
        PyScores {
            inner: self.inner.scores(),
        }
    }

    fn __repr__(&self) -> String {
        format!("ContingencyTable(yy={}, yn={}, ny={})", self.inner.yy, self.inner.yn, self.inner.ny)
    }
}

#[pyclass(name = "Scores", module = "pyclustereval", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyScores {
    inner: Scores,
}

#[pymethods]
impl PyScores {
    #[getter]
    fn precision(&self) -> f64 {
        self.inner.precision
    }

    #[getter]
    fn recall(&self) -> f64 {
        self.inner.recall
    }

    #[getter]
    fn f_measure(&self) -> f64 {
        self.inner.f_measure
    }

    fn __repr__(&self) -> String {
        format!(
            "Scores(precision={}, recall={}, f_measure={})",
            self.inner.precision, self.inner.recall, self.inner.f_measure
        )
    }
}

#[pyclass(name = "FTable", module = "pyclustereval", frozen)]
pub struct PyFTable {
    inner: FTable,
}

#[pymethods]
impl PyFTable {
    #[staticmethod]
    fn from_matrix(matrix: Vec<Vec<f64>>) -> PyResult<Self> {
        FTable::from_matrix(matrix).map(|inner| Self { inner }).map_err(value_err)
    }

    #[staticmethod]
    #[pyo3(signature = (system, expert, flatten="inherit"))]
    fn build(system: &PyClustering, expert: &PyExpertHierarchy, flatten: &str) -> PyResult<Self> {
        let cols = model::flatten(&expert.inner, flatten_mode(flatten)?).map_err(value_err)?;
        Ok(Self {
            inner: mapping::build_f_table(&system.inner, &cols),
        })
    }

    #[getter]
    fn rows(&self) -> Vec<String> {
        self.inner.rows.clone()
    }

    #[getter]
    fn cols(&self) -> Vec<String> {
        self.inner.cols.clone()
    }

    fn cells(&self) -> Vec<Vec<f64>> {
        self.inner.to_matrix()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<f64> {
        if row < self.inner.n_rows() && col < self.inner.n_cols() {
            Ok(self.inner.get(row, col))
        } else {
            Err(pyo3::exceptions::PyIndexError::new_err("cell out of range"))
        }
    }
}

#[pyclass(name = "MappingResult", module = "pyclustereval", frozen)]
pub struct PyMappingResult {
    inner: MappingResult,
}

#[pymethods]
impl PyMappingResult {
    /// `(row, col, f)` triples sorted by row.
    #[getter]
    fn pairs(&self) -> Vec<(usize, usize, f64)> {
        self.inner.pairs.iter().map(|p| (p.row, p.col, p.f)).collect()
    }

    #[getter]
    fn unmapped_rows(&self) -> Vec<usize> {
        self.inner.unmapped_rows.clone()
    }

    #[getter]
    fn unmapped_cols(&self) -> Vec<usize> {
        self.inner.unmapped_cols.clone()
    }

    #[getter]
    fn threshold(&self) -> f64 {
        self.inner.threshold
    }

    /// `(row, from_col, to_col_or_None, loss)` re-map events in order.
    #[getter]
    fn trace(&self) -> Vec<(usize, usize, Option<usize>, f64)> {
        self.inner.trace.iter().map(|e| (e.row, e.from, e.to, e.loss)).collect()
    }

    fn assignment(&self) -> Vec<Option<usize>> {
        self.inner.assignment()
    }

    fn total_f(&self) -> f64 {
        self.inner.total_f()
    }
}

#[pyclass(name = "EvaluationReport", module = "pyclustereval", frozen)]
pub struct PyEvaluationReport {
    inner: EvaluationReport,
}

#[pymethods]
impl PyEvaluationReport {
    #[getter]
    fn overall(&self) -> PyContingencyTable {
        PyContingencyTable {
            inner: self.inner.overall,
        }
    }

    #[getter]
    fn overall_scores(&self) -> PyScores {
        PyScores {
            inner: self.inner.overall_scores,
        }
    }

    #[getter]
    fn precision(&self) -> f64 {
        self.inner.overall_scores.precision
    }

    #[getter]
    fn recall(&self) -> f64 {
        self.inner.overall_scores.recall
    }

    #[getter]
    fn f_measure(&self) -> f64 {
        self.inner.overall_scores.f_measure
    }

    /// `(system_label, expert_path, ContingencyTable)` per mapped pair.
    #[getter]
    fn per_pair(&self) -> Vec<(String, String, PyContingencyTable)> {
        self.inner
            .per_pair
            .iter()
            .map(|p| {
                (
                    p.system_label.clone(),
                    p.expert_path.clone(),
                    PyContingencyTable { inner: p.table },
                )
            })
            .collect()
    }

    #[getter]
    fn unmapped_system(&self) -> Vec<(String, usize)> {
        self.inner
            .unmapped_system
            .iter()
            .map(|c| (c.label.clone(), c.size))
            .collect()
    }

    #[getter]
    fn unmapped_expert(&self) -> Vec<(String, usize)> {
        self.inner
            .unmapped_expert
            .iter()
            .map(|c| (c.path.clone(), c.size))
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

fn member_set(words: Vec<String>) -> MemberSet {
    words.iter().map(|w| normalize_word(w)).collect()
}

#[pyfunction]
fn contingency(system_class: Vec<String>, expert_class: Vec<String>) -> PyContingencyTable {
    PyContingencyTable {
        inner: metrics::contingency(&member_set(system_class), &member_set(expert_class)),
    }
}

#[pyfunction]
fn scores(table: &PyContingencyTable) -> PyScores {
    PyScores {
        inner: metrics::scores(&table.inner),
    }
}

#[pyfunction]
fn f_measure(precision: f64, recall: f64) -> f64 {
    metrics::f_measure(precision, recall)
}

#[pyfunction]
fn pair_baseline(system: &PyClustering, expert: &PyClustering) -> (PyContingencyTable, PyScores, bool) {
    let b = metrics::pair_baseline(&system.inner, &expert.inner);
    (
        PyContingencyTable { inner: b.table },
        PyScores { inner: b.scores },
        b.is_reliable(),
    )
}

#[pyfunction]
#[pyo3(signature = (table, threshold=pipeline::DEFAULT_THRESHOLD))]
fn initial_potentials(table: &PyFTable, threshold: f64) -> Vec<Option<usize>> {
    mapping::initial_potentials(&table.inner, threshold)
}

#[pyfunction]
#[pyo3(signature = (table, threshold=pipeline::DEFAULT_THRESHOLD))]
fn resolve_conflicts(table: &PyFTable, threshold: f64) -> PyResult<PyMappingResult> {
    mapping::try_resolve_conflicts(&table.inner, threshold)
        .map(|inner| PyMappingResult { inner })
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (table, threshold=pipeline::DEFAULT_THRESHOLD))]
fn brute_force_mapping(table: &PyFTable, threshold: f64) -> PyResult<PyMappingResult> {
    mapping::brute_force_mapping(&table.inner, threshold)
        .map(|inner| PyMappingResult { inner })
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (system, expert, threshold=pipeline::DEFAULT_THRESHOLD, flatten="inherit", unmapped_cols="all-columns"))]
fn evaluate(
    system: &PyClustering,
    expert: &PyExpertHierarchy,
    threshold: f64,
    flatten: &str,
    unmapped_cols: &str,
) -> PyResult<PyEvaluationReport> {
    let cfg = EvalConfig {
        threshold,
        flatten: flatten_mode(flatten)?,
        unmapped_cols: unmapped_policy(unmapped_cols)?,
    };
    pipeline::evaluate(&system.inner, &expert.inner, &cfg)
        .map(|e| PyEvaluationReport { inner: e.report })
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (seed, vocab_size=40, n_classes=4, min_size=2, max_size=8, overlap_rate=0.0))]
fn gen_clustering(
    seed: u64,
    vocab_size: usize,
    n_classes: usize,
    min_size: usize,
    max_size: usize,
    overlap_rate: f64,
) -> PyResult<PyClustering> {
    let spec = GenSpec {
        seed,
        vocab_size,
        n_classes,
        class_size: (min_size, max_size),
        overlap_rate,
        hierarchy_depth: 1,
    };
    testkit::gen_clustering(&spec)
        .map(|inner| PyClustering { inner })
        .map_err(value_err)
}

#[pyfunction]
fn perturb(clustering: &PyClustering, seed: u64, move_rate: f64) -> PyResult<PyClustering> {
    if !(0.0..=1.0).contains(&move_rate) {
        return Err(PyValueError::new_err("move_rate must be within [0, 1]"));
    }
    Ok(PyClustering {
        inner: testkit::perturb(&clustering.inner, seed, move_rate),
    })
}

#[pymodule]
fn pyclustereval(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClustering>()?;
    m.add_class::<PyExpertHierarchy>()?;
    m.add_class::<PyContingencyTable>()?;
    m.add_class::<PyScores>()?;
    m.add_class::<PyFTable>()?;
    m.add_class::<PyMappingResult>()?;
    m.add_class::<PyEvaluationReport>()?;
    m.add_function(wrap_pyfunction!(contingency, m)?)?;
    m.add_function(wrap_pyfunction!(scores, m)?)?;
    m.add_function(wrap_pyfunction!(f_measure, m)?)?;
    m.add_function(wrap_pyfunction!(pair_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(initial_potentials, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_conflicts, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(gen_clustering, m)?)?;
    m.add_function(wrap_pyfunction!(perturb, m)?)?;
    m.add("DEFAULT_THRESHOLD", pipeline::DEFAULT_THRESHOLD)?;
    Ok(())
}
