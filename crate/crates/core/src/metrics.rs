//! Element-based contingency tables and precision / recall / F-measure.
//!
//! The NO-NO cell is never represented: words absent from both classes carry
//! no information about how well the two classes agree.

use std::collections::HashSet;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::model::{Clustering, MemberSet};

/// YES-YES / YES-NO / NO-YES counts, system side first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContingencyTable {
    /// In both the system class and the expert class.
    pub yy: usize,
    /// System only.
    pub yn: usize,
    /// Expert only.
    pub ny: usize,
}

impl ContingencyTable {
    pub const fn new(yy: usize, yn: usize, ny: usize) -> Self {
        Self { yy, yn, ny }
    }

    pub fn scores(&self) -> Scores {
        scores(self)
    }

    /// The same table seen from the other side.
    pub fn transposed(&self) -> Self {
        Self::new(self.yy, self.ny, self.yn)
    }
}

impl Add for ContingencyTable {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.yy + rhs.yy, self.yn + rhs.yn, self.ny + rhs.ny)
    }
}

impl AddAssign for ContingencyTable {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for ContingencyTable {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl Scores {
    /// Scores from precision and recall given directly, e.g. from a published table.
    pub fn from_rates(precision: f64, recall: f64) -> Self {
        Self {
            precision,
            recall,
            f_measure: f_measure(precision, recall),
        }
    }
}

/// Balanced harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    let sum = precision + recall;
    if sum > 0.0 {
        2.0 * precision * recall / sum
    } else {
        0.0
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Counts `a` as the system class and `b` as the expert class.
pub fn contingency(a: &MemberSet, b: &MemberSet) -> ContingencyTable {
    let yy = a.iter().filter(|w| b.contains(*w)).count();
    ContingencyTable::new(yy, a.len() - yy, b.len() - yy)
}

pub fn scores(t: &ContingencyTable) -> Scores {
    Scores::from_rates(ratio(t.yy, t.yy + t.yn), ratio(t.yy, t.yy + t.ny))
}

/// Pair-counting comparison of two flat clusterings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairBaseline {
    pub table: ContingencyTable,
    pub scores: Scores,
    pub system_is_partition: bool,
    pub expert_is_partition: bool,
}

impl PairBaseline {
    /// The pair scheme is only well defined on partitions.
    pub fn is_reliable(&self) -> bool {
        self.system_is_partition && self.expert_is_partition
    }
}

fn co_classified_pairs(c: &Clustering) -> HashSet<(&str, &str)> {
    let mut pairs = HashSet::new();
    for class in &c.classes {
        let words: Vec<&str> = class.members.iter().map(String::as_str).collect();
        for (i, &a) in words.iter().enumerate() {
            for &b in &words[i + 1..] {
                pairs.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    pairs
}

/// Pair-based baseline: a cell counts unordered word pairs placed together.
///
/// A pair co-occurring in several classes of the same clustering is counted
/// once, so overlapping input loses information; see
/// [`PairBaseline::is_reliable`].
pub fn pair_baseline(system: &Clustering, expert: &Clustering) -> PairBaseline {
    let sys = co_classified_pairs(system);
    let exp = co_classified_pairs(expert);
    let yy = sys.intersection(&exp).count();
    let table = ContingencyTable::new(yy, sys.len() - yy, exp.len() - yy);
    PairBaseline {
        table,
        scores: scores(&table),
        system_is_partition: system.is_partition(),
        expert_is_partition: expert.is_partition(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LabeledClass;

    fn set(words: &[&str]) -> MemberSet {
        words.iter().map(|w| w.to_string()).collect()
    }

    fn clustering(classes: &[&[&str]]) -> Clustering {
        let classes = classes
            .iter()
            .enumerate()
            .map(|(i, ws)| LabeledClass::new(format!("k{i}"), ws.iter()).unwrap())
            .collect();
        Clustering::new(None, classes).unwrap()
    }

    fn class_a() -> MemberSet {
        set(&["cat", "dog", "stomach", "pig", "cow", "hair", "cattle", "goat"])
    }

    fn class_b() -> MemberSet {
        set(&[
            "horse", "cow", "cat", "pig", "lamb", "dog", "sheep", "mare", "cattle", "swine", "goat",
        ])
    }

    #[test]
    fn overlapping_pair_counts() {
        assert_eq!(contingency(&class_a(), &class_b()), ContingencyTable::new(6, 2, 5));
    }

    #[test]
    fn identical_and_disjoint() {
        assert_eq!(contingency(&set(&["a", "b"]), &set(&["a", "b"])), ContingencyTable::new(2, 0, 0));
        assert_eq!(contingency(&set(&["a"]), &set(&["b"])), ContingencyTable::new(0, 1, 1));
        assert_eq!(contingency(&set(&[]), &set(&[])), ContingencyTable::default());
    }

    #[test]
    fn scores_from_overlapping_pair() {
        let s = scores(&ContingencyTable::new(6, 2, 5));
        assert_eq!(s.precision, 0.75);
        assert!((s.recall - 6.0 / 11.0).abs() < 1e-15);
        // 2 * 0.75 * (6/11) / (0.75 + 6/11) = 12/19
        assert!((s.f_measure - 12.0 / 19.0).abs() < 1e-15);
    }

    #[test]
    fn scores_degenerate() {
        assert_eq!(scores(&ContingencyTable::new(0, 3, 4)), Scores::default());
        assert_eq!(scores(&ContingencyTable::default()), Scores::default());
        let perfect = scores(&ContingencyTable::new(5, 0, 0));
        assert_eq!((perfect.precision, perfect.recall, perfect.f_measure), (1.0, 1.0, 1.0));
    }

    #[test]
    fn f_from_published_rates() {
        let f = Scores::from_rates(0.7538, 0.2909).f_measure;
        assert!((f - 0.4198).abs() < 5e-5, "{f}");
        assert_eq!(format!("{f:.2}"), "0.42");
    }

    #[test]
    fn baseline_identical_partitions() {
        let c = clustering(&[&["a", "b"], &["c"]]);
        let b = pair_baseline(&c, &c);
        assert_eq!(b.table, ContingencyTable::new(1, 0, 0));
        assert_eq!(b.scores.f_measure, 1.0);
        assert!(b.is_reliable());
    }

    #[test]
    fn baseline_merged_vs_split() {
        let b = pair_baseline(&clustering(&[&["a", "b", "c"]]), &clustering(&[&["a", "b"], &["c"]]));
        assert_eq!(b.table, ContingencyTable::new(1, 2, 0));
        assert!((b.scores.precision - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.scores.recall, 1.0);
    }

    #[test]
    fn baseline_singletons() {
        let c = clustering(&[&["a"], &["b"], &["c"]]);
        let b = pair_baseline(&c, &c);
        assert_eq!(b.table, ContingencyTable::default());
        assert_eq!(b.scores.f_measure, 0.0);
    }

    #[test]
    fn baseline_dedups_overlapping_pairs() {
        let sys = clustering(&[&["a", "b", "c"], &["a", "b"]]);
        let b = pair_baseline(&sys, &clustering(&[&["a", "b"]]));
        assert_eq!(b.table, ContingencyTable::new(1, 2, 0));
        assert!(!b.system_is_partition);
        assert!(!b.is_reliable());
    }
}
