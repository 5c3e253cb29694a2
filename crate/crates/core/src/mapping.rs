//! F-measure table and the one-to-one mapping between system classes and
//! expert columns.
//!
//! Each system class (row) first claims its best column at or above the
//! threshold. While some column is claimed by more than one row, the single
//! re-map that gives up the least F-measure is executed: the row moves to its
//! best remaining column, skipping every column it has already lost, or
//! becomes unmapped when none is left. Ties always go to the smaller index.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::metrics::{contingency, scores};
use crate::model::{Clustering, ColumnList};

/// Largest side accepted by [`brute_force_mapping`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MappingError {
    #[error("table is {rows}x{cols}; exhaustive search supports at most {limit}x{limit}")]
    TooLarge { rows: usize, cols: usize, limit: usize },

    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },

    #[error("cell ({row}, {col}) = {value} is outside [0, 1]")]
    CellOutOfRange { row: usize, col: usize, value: f64 },

    #[error("threshold {0} is outside [0, 1]")]
    BadThreshold(f64),

    #[error("mapping invariant violated: {0}")]
    Invariant(String),
}

/// Row-major table of F-measures, system classes × expert columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FTable {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    cells: Vec<f64>,
}

impl FTable {
    /// Builds a table from explicit cell values, labelling rows `r0..` and columns `c0..`.
    pub fn from_matrix(matrix: Vec<Vec<f64>>) -> Result<Self, MappingError> {
        let n_cols = matrix.first().map_or(0, Vec::len);
        let rows = (0..matrix.len()).map(|i| format!("r{i}")).collect();
        let cols = (0..n_cols).map(|j| format!("c{j}")).collect();
        Self::with_labels(rows, cols, matrix)
    }

    pub fn with_labels(
        rows: Vec<String>,
        cols: Vec<String>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self, MappingError> {
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != cols.len() {
                return Err(MappingError::Ragged {
                    row: r,
                    found: row.len(),
                    expected: cols.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&value) {
                    return Err(MappingError::CellOutOfRange { row: r, col: c, value });
                }
                cells.push(value);
            }
        }
        if matrix.len() != rows.len() {
            return Err(MappingError::Ragged {
                row: matrix.len(),
                found: 0,
                expected: cols.len(),
            });
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.cols.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.cols.len();
        &self.cells[row * n..(row + 1) * n]
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.n_rows()).map(|r| self.row(r).to_vec()).collect()
    }
}

/// One F-measure per (system class, expert column).
pub fn build_f_table(system: &Clustering, columns: &ColumnList) -> FTable {
    let cells = system
        .classes
        .iter()
        .flat_map(|class| {
            columns
                .columns
                .iter()
                .map(move |col| scores(&contingency(&class.members, &col.members)).f_measure)
        })
        .collect();
    FTable {
        rows: system.classes.iter().map(|c| c.label.clone()).collect(),
        cols: columns.columns.iter().map(|c| c.display_path()).collect(),
        cells,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MappedPair {
    pub row: usize,
    pub col: usize,
    pub f: f64,
}

/// A row giving up column `from` for `to` (or for nothing).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemapEvent {
    pub row: usize,
    pub from: usize,
    pub to: Option<usize>,
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingResult {
    pub n_rows: usize,
    pub n_cols: usize,
    /// Sorted by row.
    pub pairs: Vec<MappedPair>,
    pub unmapped_rows: Vec<usize>,
    pub unmapped_cols: Vec<usize>,
    pub threshold: f64,
    pub trace: Vec<RemapEvent>,
}

impl MappingResult {
    fn from_assignment(t: &FTable, assign: &[Option<usize>], threshold: f64, trace: Vec<RemapEvent>) -> Self {
        let mut col_taken = vec![false; t.n_cols()];
        let mut pairs = Vec::new();
        let mut unmapped_rows = Vec::new();
        for (row, slot) in assign.iter().enumerate() {
            match *slot {
                Some(col) => {
                    col_taken[col] = true;
                    pairs.push(MappedPair {
                        row,
                        col,
                        f: t.get(row, col),
                    });
                }
                None => unmapped_rows.push(row),
            }
        }
        let unmapped_cols = (0..t.n_cols()).filter(|&c| !col_taken[c]).collect();
        Self {
            n_rows: t.n_rows(),
            n_cols: t.n_cols(),
            pairs,
            unmapped_rows,
            unmapped_cols,
            threshold,
            trace,
        }
    }

    pub fn total_f(&self) -> f64 {
        self.pairs.iter().map(|p| p.f).sum()
    }

    /// Column assigned to each row.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n_rows];
        for p in &self.pairs {
            out[p.row] = Some(p.col);
        }
        out
    }

    pub fn col_of(&self, row: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.row == row).map(|p| p.col)
    }

    /// Rows that lost at least one conflict.
    pub fn remapped_rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.trace.iter().map(|e| e.row).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    /// Checks one-to-one, threshold and partition invariants against `t`.
    pub fn validate(&self, t: &FTable) -> Result<(), MappingError> {
        let fail = |msg: String| Err(MappingError::Invariant(msg));
        if self.n_rows != t.n_rows() || self.n_cols != t.n_cols() {
            return fail(format!(
                "mapping is {}x{} but table is {}x{}",
                self.n_rows,
                self.n_cols,
                t.n_rows(),
                t.n_cols()
            ));
        }
        let mut row_seen = vec![false; self.n_rows];
        let mut col_seen = vec![false; self.n_cols];
        for p in &self.pairs {
            if p.row >= self.n_rows || p.col >= self.n_cols {
                return fail(format!("pair ({}, {}) out of bounds", p.row, p.col));
            }
            if std::mem::replace(&mut row_seen[p.row], true) {
                return fail(format!("row {} mapped twice", p.row));
            }
            if std::mem::replace(&mut col_seen[p.col], true) {
                return fail(format!("column {} mapped twice", p.col));
            }
            if p.f != t.get(p.row, p.col) {
                return fail(format!("pair ({}, {}) records f={} but cell is {}", p.row, p.col, p.f, t.get(p.row, p.col)));
            }
            if p.f < self.threshold {
                return fail(format!("pair ({}, {}) has f={} below threshold {}", p.row, p.col, p.f, self.threshold));
            }
        }
        for &r in &self.unmapped_rows {
            if r >= self.n_rows || std::mem::replace(&mut row_seen[r], true) {
                return fail(format!("unmapped row {r} is out of bounds or also mapped"));
            }
        }
        for &c in &self.unmapped_cols {
            if c >= self.n_cols || std::mem::replace(&mut col_seen[c], true) {
                return fail(format!("unmapped column {c} is out of bounds or also mapped"));
            }
        }
        if row_seen.contains(&false) || col_seen.contains(&false) {
            return fail("rows or columns missing from the mapping".into());
        }
        Ok(())
    }
}

fn check_threshold(threshold: f64) -> Result<(), MappingError> {
    if (0.0..=1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(MappingError::BadThreshold(threshold))
    }
}

/// Best column of `row` at or above `threshold`, skipping `skip`; first index wins ties.
fn best_column(
    t: &FTable,
    row: usize,
    threshold: f64,
    mut skip: impl FnMut(usize) -> bool,
) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (col, &f) in t.row(row).iter().enumerate() {
        if f < threshold || skip(col) {
            continue;
        }
        if best.is_none_or(|(_, b)| f > b) {
            best = Some((col, f));
        }
    }
    best.map(|(col, _)| col)
}

/// Each row's argmax column among cells with F ≥ `threshold`.
pub fn initial_potentials(t: &FTable, threshold: f64) -> Vec<Option<usize>> {
    (0..t.n_rows())
        .map(|row| best_column(t, row, threshold, |_| false))
        .collect()
}

/// Greedy minimal-loss conflict resolution.
///
/// Panics if `threshold` is outside `[0, 1]`; use [`try_resolve_conflicts`]
/// for a fallible variant.
pub fn resolve_conflicts(t: &FTable, threshold: f64) -> MappingResult {
    try_resolve_conflicts(t, threshold).expect("threshold within [0, 1]")
}

pub fn try_resolve_conflicts(t: &FTable, threshold: f64) -> Result<MappingResult, MappingError> {
    check_threshold(threshold)?;
    let n_cols = t.n_cols();
    let mut assign = initial_potentials(t, threshold);
    let mut lost = vec![vec![false; n_cols]; t.n_rows()];
    let mut trace = Vec::new();

    loop {
        let mut claims: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (row, col) in assign.iter().enumerate() {
            if let Some(col) = *col {
                claims.entry(col).or_default().push(row);
            }
        }

        // (loss, row, from, to); rows ascend within a column and each row holds
        // one column, so a strict `<` keeps the (row, col) tie-break.
        let mut cheapest: Option<(f64, usize, usize, Option<usize>)> = None;
        for (&col, rows) in claims.iter().filter(|(_, rows)| rows.len() > 1) {
            for &row in rows {
                let next = best_column(t, row, threshold, |c| c == col || lost[row][c]);
                let loss = t.get(row, col) - next.map_or(0.0, |c| t.get(row, c));
                let better = match cheapest {
                    None => true,
                    Some((l, r, _, _)) => loss < l || (loss == l && row < r),
                };
                if better {
                    cheapest = Some((loss, row, col, next));
                }
            }
        }

        let Some((loss, row, from, to)) = cheapest else {
            break;
        };
        lost[row][from] = true;
        assign[row] = to;
        trace.push(RemapEvent { row, from, to, loss });
    }

    Ok(MappingResult::from_assignment(t, &assign, threshold, trace))
}

/// Exhaustive search for the injective mapping maximizing total F.
///
/// Only pairs with F ≥ `threshold` may be used. Among optimal mappings the
/// lexicographically first assignment wins, comparing rows in order with a
/// smaller column preferred and "unmapped" ordered last.
pub fn brute_force_mapping(t: &FTable, threshold: f64) -> Result<MappingResult, MappingError> {
    check_threshold(threshold)?;
    if t.n_rows() > BRUTE_FORCE_LIMIT || t.n_cols() > BRUTE_FORCE_LIMIT {
        return Err(MappingError::TooLarge {
            rows: t.n_rows(),
            cols: t.n_cols(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    struct Search<'a> {
        t: &'a FTable,
        threshold: f64,
        current: Vec<Option<usize>>,
        used: Vec<bool>,
        best: Vec<Option<usize>>,
        best_total: f64,
    }

    impl Search<'_> {
        fn run(&mut self, row: usize, total: f64) {
            if row == self.t.n_rows() {
                // Enumeration visits assignments in preference order, so only a
                // strictly larger total replaces the incumbent.
                if total > self.best_total + 1e-12 {
                    self.best_total = total;
                    self.best.clone_from(&self.current);
                }
                return;
            }
            for col in 0..self.t.n_cols() {
                let f = self.t.get(row, col);
                if self.used[col] || f < self.threshold {
                    continue;
                }
                self.used[col] = true;
                self.current[row] = Some(col);
                self.run(row + 1, total + f);
                self.current[row] = None;
                self.used[col] = false;
            }
            self.run(row + 1, total);
        }
    }

    let mut search = Search {
        t,
        threshold,
        current: vec![None; t.n_rows()],
        used: vec![false; t.n_cols()],
        best: vec![None; t.n_rows()],
        best_total: f64::NEG_INFINITY,
    };
    search.run(0, 0.0);
    Ok(MappingResult::from_assignment(t, &search.best, threshold, Vec::new()))
}
