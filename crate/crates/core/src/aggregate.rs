//! Overall contingency table for a whole clustering.
//!
//! Every mapped pair contributes its own table. Unmapped system classes add
//! all their members to YES-NO, unmapped expert columns add theirs to NO-YES.
//! Counting is per (class, word) incidence on both sides.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mapping::MappingResult;
use crate::metrics::{contingency, scores, ContingencyTable, Scores};
use crate::model::{Clustering, Column, ColumnList, FlattenMode};

/// Which unmapped expert columns feed the NO-YES cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnmappedPolicy {
    /// Every unmapped column.
    #[default]
    AllColumns,
    /// Only unmapped root columns.
    TopLevel,
    /// Only unmapped leaf columns.
    Leaves,
}

impl UnmappedPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            UnmappedPolicy::AllColumns => "all-columns",
            UnmappedPolicy::TopLevel => "top-level",
            UnmappedPolicy::Leaves => "leaves",
        }
    }

    pub fn counts(self, column: &Column) -> bool {
        match self {
            UnmappedPolicy::AllColumns => true,
            UnmappedPolicy::TopLevel => column.is_top_level(),
            UnmappedPolicy::Leaves => column.is_leaf,
        }
    }
}

impl fmt::Display for UnmappedPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AggregateError {
    #[error("mapping covers {mapping_rows} system classes but the clustering has {classes}")]
    RowMismatch { mapping_rows: usize, classes: usize },

    #[error("mapping covers {mapping_cols} expert columns but the column list has {columns}")]
    ColumnMismatch { mapping_cols: usize, columns: usize },

    #[error("mapping references out-of-range pair ({row}, {col})")]
    OutOfRange { row: usize, col: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub threshold: f64,
    pub flatten: FlattenMode,
    pub unmapped_cols: UnmappedPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub system_label: String,
    pub expert_path: String,
    pub table: ContingencyTable,
    pub scores: Scores,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnmappedClass {
    pub label: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnmappedColumn {
    pub path: String,
    pub size: usize,
    /// Whether the active policy added this column to NO-YES.
    pub counted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub system: Option<String>,
    pub expert: Option<String>,
    pub overall: ContingencyTable,
    pub overall_scores: Scores,
    pub per_pair: Vec<PairReport>,
    pub unmapped_system: Vec<UnmappedClass>,
    pub unmapped_expert: Vec<UnmappedColumn>,
    pub config: ReportConfig,
}

impl EvaluationReport {
    pub fn mapped_pairs(&self) -> usize {
        self.per_pair.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Folds a mapping into one overall table and its scores.
pub fn aggregate(
    system: &Clustering,
    columns: &ColumnList,
    mapping: &MappingResult,
    policy: UnmappedPolicy,
) -> Result<EvaluationReport, AggregateError> {
    if mapping.n_rows != system.classes.len() {
        return Err(AggregateError::RowMismatch {
            mapping_rows: mapping.n_rows,
            classes: system.classes.len(),
        });
    }
    if mapping.n_cols != columns.len() {
        return Err(AggregateError::ColumnMismatch {
            mapping_cols: mapping.n_cols,
            columns: columns.len(),
        });
    }

    let mut pairs = mapping.pairs.clone();
    pairs.sort_by_key(|p| (p.row, p.col));
    let mut rows_mapped = vec![false; system.classes.len()];
    let mut cols_mapped = vec![false; columns.len()];

    let mut per_pair = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let (Some(class), Some(column)) = (system.classes.get(p.row), columns.columns.get(p.col))
        else {
            return Err(AggregateError::OutOfRange { row: p.row, col: p.col });
        };
        rows_mapped[p.row] = true;
        cols_mapped[p.col] = true;
        let table = contingency(&class.members, &column.members);
        per_pair.push(PairReport {
            system_label: class.label.clone(),
            expert_path: column.display_path(),
            table,
            scores: scores(&table),
        });
    }

    let unmapped_system: Vec<UnmappedClass> = system
        .classes
        .iter()
        .zip(&rows_mapped)
        .filter(|(_, &mapped)| !mapped)
        .map(|(c, _)| UnmappedClass {
            label: c.label.clone(),
            size: c.len(),
        })
        .collect();

    let unmapped_expert: Vec<UnmappedColumn> = columns
        .columns
        .iter()
        .zip(&cols_mapped)
        .filter(|(_, &mapped)| !mapped)
        .map(|(c, _)| UnmappedColumn {
            path: c.display_path(),
            size: c.members.len(),
            counted: policy.counts(c),
        })
        .collect();

    let mut overall: ContingencyTable = per_pair.iter().map(|p| p.table).sum();
    overall.yn += unmapped_system.iter().map(|c| c.size).sum::<usize>();
    overall.ny += unmapped_expert
        .iter()
        .filter(|c| c.counted)
        .map(|c| c.size)
        .sum::<usize>();

    Ok(EvaluationReport {
        system: system.name.clone(),
        expert: None,
        overall,
        overall_scores: scores(&overall),
        per_pair,
        unmapped_system,
        unmapped_expert,
        config: ReportConfig {
            threshold: mapping.threshold,
            flatten: columns.mode,
            unmapped_cols: policy,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{build_f_table, resolve_conflicts, FTable, MappedPair};
    use crate::model::{flatten, parse_hierarchy, ExpertHierarchy, LabeledClass};

    fn clustering(classes: &[(&str, &[&str])]) -> Clustering {
        Clustering::new(
            Some("sys".into()),
            classes
                .iter()
                .map(|(l, ws)| LabeledClass::new(l, *ws).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn columns(classes: &[(&str, &[&str])]) -> ColumnList {
        flatten(&ExpertHierarchy::flat(clustering(classes)), FlattenMode::Inherit).unwrap()
    }

    fn mapping_for(sys: &Clustering, cols: &ColumnList, pairs: &[(usize, usize)]) -> MappingResult {
        let t = build_f_table(sys, cols);
        let mut assign = vec![None; sys.classes.len()];
        for &(r, c) in pairs {
            assign[r] = Some(c);
        }
        MappingResult {
            n_rows: t.n_rows(),
            n_cols: t.n_cols(),
            pairs: pairs
                .iter()
                .map(|&(row, col)| MappedPair { row, col, f: t.get(row, col) })
                .collect(),
            unmapped_rows: (0..t.n_rows()).filter(|r| assign[*r].is_none()).collect(),
            unmapped_cols: (0..t.n_cols())
                .filter(|c| !pairs.iter().any(|p| p.1 == *c))
                .collect(),
            threshold: 0.0,
            trace: vec![],
        }
    }

    const A: &[&str] = &["cat", "dog", "stomach", "pig", "cow", "hair", "cattle", "goat"];
    const B: &[&str] = &[
        "horse", "cow", "cat", "pig", "lamb", "dog", "sheep", "mare", "cattle", "swine", "goat",
    ];

    #[test]
    fn single_overlapping_pair() {
        let sys = clustering(&[("A", A)]);
        let cols = columns(&[("B", B)]);
        let m = resolve_conflicts(&build_f_table(&sys, &cols), 0.2);
        let r = aggregate(&sys, &cols, &m, UnmappedPolicy::AllColumns).unwrap();
        assert_eq!(r.overall, ContingencyTable::new(6, 2, 5));
        assert_eq!(format!("{:.2}", r.overall_scores.precision * 100.0), "75.00");
        assert_eq!(format!("{:.2}", r.overall_scores.recall * 100.0), "54.55");
        assert_eq!(format!("{:.2}", r.overall_scores.f_measure), "0.63");
        assert!(r.unmapped_system.is_empty() && r.unmapped_expert.is_empty());
    }

    #[test]
    fn empty_mapping_counts_everything_unmapped() {
        let sys = clustering(&[("S", &["a", "b", "c"])]);
        let cols = columns(&[("E", &["w", "x", "y", "z"])]);
        let m = mapping_for(&sys, &cols, &[]);
        let r = aggregate(&sys, &cols, &m, UnmappedPolicy::AllColumns).unwrap();
        assert_eq!(r.overall, ContingencyTable::new(0, 3, 4));
        assert_eq!(r.overall_scores.f_measure, 0.0);
    }

    #[test]
    fn pair_tables_add_up() {
        let sys = clustering(&[("A", A), ("P", &["x", "y"])]);
        let cols = columns(&[("B", B), ("Q", &["x", "y"])]);
        let m = resolve_conflicts(&build_f_table(&sys, &cols), 0.2);
        let r = aggregate(&sys, &cols, &m, UnmappedPolicy::AllColumns).unwrap();
        assert_eq!(r.per_pair[0].table, ContingencyTable::new(6, 2, 5));
        assert_eq!(r.per_pair[1].table, ContingencyTable::new(2, 0, 0));
        assert_eq!(r.overall, ContingencyTable::new(8, 2, 5));
    }

    #[test]
    fn order_of_pairs_is_irrelevant() {
        let sys = clustering(&[("A", A), ("P", &["x", "y"])]);
        let cols = columns(&[("B", B), ("Q", &["x", "y"])]);
        let fwd = mapping_for(&sys, &cols, &[(0, 0), (1, 1)]);
        let mut rev = fwd.clone();
        rev.pairs.reverse();
        assert_eq!(
            aggregate(&sys, &cols, &fwd, UnmappedPolicy::AllColumns).unwrap(),
            aggregate(&sys, &cols, &rev, UnmappedPolicy::AllColumns).unwrap()
        );
    }

    #[test]
    fn unmapped_column_policies() {
        let h = parse_hierarchy(
            r#"{"classes": [
                {"label": "ANIMAL", "members": ["cat"], "children": [
                    {"label": "PET", "members": ["dog", "hamster"]},
                    {"label": "FARM", "members": ["cow"]}
                ]},
                {"label": "FOOD", "members": ["hay", "oats"]}
            ]}"#,
        )
        .unwrap();
        let cols = flatten(&h, FlattenMode::Inherit).unwrap();
        let sys = clustering(&[("S", &["hay", "oats"])]);
        let m = mapping_for(&sys, &cols, &[(0, 3)]);
        // Unmapped: ANIMAL (4), ANIMAL/PET (2), ANIMAL/FARM (1).
        let ny = |policy| aggregate(&sys, &cols, &m, policy).unwrap().overall.ny;
        assert_eq!(ny(UnmappedPolicy::AllColumns), 7);
        assert_eq!(ny(UnmappedPolicy::TopLevel), 4);
        assert_eq!(ny(UnmappedPolicy::Leaves), 3);
        let r = aggregate(&sys, &cols, &m, UnmappedPolicy::Leaves).unwrap();
        assert_eq!(r.config.flatten, FlattenMode::Inherit);
        assert!(!r.unmapped_expert[0].counted);
    }

    #[test]
    fn dimension_mismatch() {
        let sys = clustering(&[("A", A)]);
        let cols = columns(&[("B", B)]);
        let m = resolve_conflicts(&FTable::from_matrix(vec![vec![0.5], vec![0.5]]).unwrap(), 0.2);
        assert!(matches!(
            aggregate(&sys, &cols, &m, UnmappedPolicy::AllColumns),
            Err(AggregateError::RowMismatch { .. })
        ));
        let m = resolve_conflicts(&FTable::from_matrix(vec![vec![0.5, 0.1]]).unwrap(), 0.2);
        assert!(matches!(
            aggregate(&sys, &cols, &m, UnmappedPolicy::AllColumns),
            Err(AggregateError::ColumnMismatch { .. })
        ));
    }
}
