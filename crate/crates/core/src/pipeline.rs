//! flatten → F-table → conflict resolution → aggregation, in one call.

use crate::aggregate::{aggregate, AggregateError, EvaluationReport, UnmappedPolicy};
use crate::mapping::{build_f_table, try_resolve_conflicts, FTable, MappingError, MappingResult};
use crate::model::{flatten, Clustering, ColumnList, ExpertHierarchy, FlattenMode, ModelError};

/// Threshold used when none is given.
pub const DEFAULT_THRESHOLD: f64 = 0.20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub threshold: f64,
    pub flatten: FlattenMode,
    pub unmapped_cols: UnmappedPolicy,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            flatten: FlattenMode::Inherit,
            unmapped_cols: UnmappedPolicy::AllColumns,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
}

/// Every intermediate product of one system-vs-expert evaluation.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub columns: ColumnList,
    pub table: FTable,
    pub mapping: MappingResult,
    pub report: EvaluationReport,
}

pub fn evaluate(
    system: &Clustering,
    expert: &ExpertHierarchy,
    config: &EvalConfig,
) -> Result<Evaluation, EvalError> {
    let columns = flatten(expert, config.flatten)?;
    let table = build_f_table(system, &columns);
    let mapping = try_resolve_conflicts(&table, config.threshold)?;
    mapping.validate(&table)?;
    let mut report = aggregate(system, &columns, &mapping, config.unmapped_cols)?;
    report.expert = expert.name.clone();
    Ok(Evaluation {
        columns,
        table,
        mapping,
        report,
    })
}
