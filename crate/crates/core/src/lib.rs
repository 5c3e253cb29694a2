//! Evaluation of overlapping word clusterings against expert gold standards.
//!
//! A system clustering is compared with an expert hierarchy by flattening the
//! hierarchy into columns, scoring every (class, column) pair with an
//! element-based F-measure, resolving a one-to-one mapping and folding the
//! result into a single contingency table. A pair-counting baseline is
//! available for comparison on partitions.

pub mod aggregate;
pub mod cli;
pub mod mapping;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod testkit;

pub use aggregate::{aggregate, EvaluationReport, UnmappedPolicy};
pub use mapping::{
    brute_force_mapping, build_f_table, initial_potentials, resolve_conflicts, FTable,
    MappingResult,
};
pub use metrics::{contingency, f_measure, pair_baseline, scores, ContingencyTable, Scores};
pub use model::{
    flatten, parse_clustering, parse_hierarchy, Clustering, ColumnList, ExpertHierarchy,
    FlattenMode, LabeledClass,
};
pub use pipeline::{evaluate, EvalConfig, Evaluation, DEFAULT_THRESHOLD};
