//! Deterministic synthetic fixtures and brute-force oracles.
//!
//! All randomness comes from SplitMix64 (64-bit state, Steele/Lea/Flood 2014)
//! seeded directly with the user seed. Draws are derived from `next_u64` as
//! follows, so fixtures can be regenerated bit-for-bit elsewhere:
//!
//! * `below(n)`: `(next_u64() as u128 * n as u128) >> 64`
//! * `chance(p)`: `(next_u64() >> 11) as f64 * 2^-53 < p`, one draw per call
//!
//! Generated words are `w0..w{vocab_size-1}`, class labels `C0..`.

use indexmap::IndexSet;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::metrics::ContingencyTable;
use crate::model::{Clustering, ExpertHierarchy, HierarchyNode, LabeledClass, MemberSet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("infeasible generator spec: {0}")]
    Infeasible(String),
}

/// Parameters for [`gen_clustering`] and [`gen_hierarchy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub vocab_size: usize,
    pub n_classes: usize,
    pub class_size: (usize, usize),
    /// Probability that a member slot reuses a word from an earlier class.
    pub overlap_rate: f64,
    /// Expert side only; 1 is a flat hierarchy.
    pub hierarchy_depth: usize,
}

impl Default for GenSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            vocab_size: 40,
            n_classes: 4,
            class_size: (2, 8),
            overlap_rate: 0.0,
            hierarchy_depth: 1,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        let (min, max) = self.class_size;
        let fail = |msg: String| Err(GenError::Infeasible(msg));
        if self.n_classes == 0 {
            return fail("n_classes must be at least 1".into());
        }
        if min == 0 {
            return fail("minimum class size must be at least 1".into());
        }
        if min > max {
            return fail(format!("class size range ({min}, {max}) is empty"));
        }
        if max > self.vocab_size {
            return fail(format!(
                "maximum class size {max} exceeds vocabulary of {}",
                self.vocab_size
            ));
        }
        if !(0.0..=1.0).contains(&self.overlap_rate) {
            return fail(format!("overlap_rate {} is outside [0, 1]", self.overlap_rate));
        }
        Ok(())
    }
}

/// Thin wrapper fixing how raw SplitMix64 output becomes draws.
pub struct Draws(SplitMix64);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`; `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }
}

fn word(id: usize) -> String {
    format!("w{id}")
}

fn gen_classes(spec: &GenSpec, rng: &mut Draws) -> Vec<LabeledClass> {
    let (min, max) = spec.class_size;
    let mut fresh: Vec<usize> = (0..spec.vocab_size).collect();
    let mut used: Vec<usize> = Vec::new();
    let mut classes = Vec::with_capacity(spec.n_classes);
    for i in 0..spec.n_classes {
        let size = rng.between(min, max);
        let mut members: IndexSet<usize> = IndexSet::with_capacity(size);
        let mut taken_fresh = Vec::new();
        while members.len() < size {
            let reuse = rng.chance(spec.overlap_rate);
            let pool: Vec<usize> = used.iter().copied().filter(|w| !members.contains(w)).collect();
            // size <= vocab_size guarantees one of the two pools is nonempty.
            let id = if (reuse && !pool.is_empty()) || fresh.is_empty() {
                pool[rng.below(pool.len())]
            } else {
                let id = fresh.swap_remove(rng.below(fresh.len()));
                taken_fresh.push(id);
                id
            };
            members.insert(id);
        }
        used.extend(taken_fresh);
        classes.push(LabeledClass {
            label: format!("C{i}"),
            members: members.into_iter().map(word).collect(),
        });
    }
    classes
}

/// Flat clustering over the synthetic vocabulary.
pub fn gen_clustering(spec: &GenSpec) -> Result<Clustering, GenError> {
    spec.validate()?;
    let mut rng = Draws::new(spec.seed);
    let classes = gen_classes(spec, &mut rng);
    Ok(Clustering {
        name: Some(format!("generated-{}", spec.seed)),
        classes,
    })
}

/// Tree whose nodes carry the classes [`gen_clustering`] would produce.
///
/// The first `hierarchy_depth` classes form a chain so the requested depth is
/// reached; every later class becomes a root or the child of an earlier node
/// that still has room below it, chosen uniformly.
pub fn gen_hierarchy(spec: &GenSpec) -> Result<ExpertHierarchy, GenError> {
    spec.validate()?;
    let depth = spec.hierarchy_depth;
    if depth == 0 {
        return Err(GenError::Infeasible("hierarchy_depth must be at least 1".into()));
    }
    if depth > spec.n_classes {
        return Err(GenError::Infeasible(format!(
            "depth {depth} needs at least {depth} classes, have {}",
            spec.n_classes
        )));
    }
    let mut rng = Draws::new(spec.seed);
    let classes = gen_classes(spec, &mut rng);

    let mut parent: Vec<Option<usize>> = Vec::with_capacity(classes.len());
    let mut level: Vec<usize> = Vec::with_capacity(classes.len());
    for i in 0..classes.len() {
        let p = if i == 0 {
            None
        } else if i < depth {
            Some(i - 1)
        } else {
            let open: Vec<usize> = (0..i).filter(|&j| level[j] + 1 < depth).collect();
            match rng.below(open.len() + 1) {
                0 => None,
                k => Some(open[k - 1]),
            }
        };
        level.push(p.map_or(0, |p| level[p] + 1));
        parent.push(p);
    }

    fn build(i: usize, nodes: &mut [Option<LabeledClass>], kids: &[Vec<usize>]) -> HierarchyNode {
        let class = nodes[i].take().expect("each node built once");
        HierarchyNode {
            label: class.label,
            own_members: class.members,
            children: kids[i].iter().map(|&k| build(k, nodes, kids)).collect(),
        }
    }

    let mut kids = vec![Vec::new(); classes.len()];
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => kids[*p].push(i),
            None => roots.push(i),
        }
    }
    let mut nodes: Vec<Option<LabeledClass>> = classes.into_iter().map(Some).collect();
    let roots = roots.iter().map(|&r| build(r, &mut nodes, &kids)).collect();
    Ok(ExpertHierarchy {
        name: Some(format!("generated-{}", spec.seed)),
        roots,
    })
}

/// Moves each member to a uniformly chosen other class with probability `move_rate`.
///
/// A moved word already present in its destination is merged; classes left
/// empty are dropped. With a single class nothing can move.
pub fn perturb(c: &Clustering, seed: u64, move_rate: f64) -> Clustering {
    let k = c.classes.len();
    let mut rng = Draws::new(seed);
    let mut buckets: Vec<MemberSet> = vec![MemberSet::new(); k];
    for (i, class) in c.classes.iter().enumerate() {
        for w in &class.members {
            let dest = if k > 1 && rng.chance(move_rate) {
                let j = rng.below(k - 1);
                if j >= i {
                    j + 1
                } else {
                    j
                }
            } else {
                i
            };
            buckets[dest].insert(w.clone());
        }
    }
    let classes = c
        .classes
        .iter()
        .zip(buckets)
        .filter(|(_, members)| !members.is_empty())
        .map(|(class, members)| LabeledClass {
            label: class.label.clone(),
            members,
        })
        .collect();
    Clustering {
        name: c.name.clone(),
        classes,
    }
}

/// Random partition of `w0..w{n_words-1}` into at most `max_classes` classes.
pub fn random_partition(seed: u64, n_words: usize, max_classes: usize) -> Clustering {
    assert!(n_words > 0 && max_classes > 0);
    let mut rng = Draws::new(seed);
    let k = rng.between(1, max_classes);
    let mut buckets: Vec<MemberSet> = vec![MemberSet::new(); k];
    for id in 0..n_words {
        buckets[rng.below(k)].insert(word(id));
    }
    let classes = buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .enumerate()
        .map(|(i, members)| LabeledClass {
            label: format!("C{i}"),
            members,
        })
        .collect();
    Clustering {
        name: Some(format!("partition-{seed}")),
        classes,
    }
}

/// A generated system clustering paired with a generated expert hierarchy.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub system: Clustering,
    pub expert: ExpertHierarchy,
}

/// Mixed-shape evaluation instance with at most `max_classes` classes per side.
///
/// Half of the seeds perturb the gold's own classes, the other half draw an
/// unrelated clustering over the same vocabulary.
pub fn gen_instance(seed: u64, max_classes: usize) -> Instance {
    assert!(max_classes >= 1);
    let mut rng = Draws::new(seed);
    let vocab_size = rng.between(6, 40);
    let max_size = rng.between(1, vocab_size.min(12));
    let gold = GenSpec {
        seed: rng.next_u64(),
        vocab_size,
        n_classes: rng.between(1, max_classes),
        class_size: (rng.between(1, max_size), max_size),
        overlap_rate: rng.unit() * 0.5,
        hierarchy_depth: 1,
    };
    let gold = GenSpec {
        hierarchy_depth: rng.between(1, gold.n_classes.min(3)),
        ..gold
    };
    let expert = gen_hierarchy(&gold).expect("derived spec is feasible");
    let system = if rng.chance(0.5) {
        let own = gen_clustering(&gold).expect("derived spec is feasible");
        perturb(&own, rng.next_u64(), rng.unit() * 0.6)
    } else {
        let spec = GenSpec {
            seed: rng.next_u64(),
            n_classes: rng.between(1, max_classes),
            overlap_rate: rng.unit() * 0.5,
            ..gold
        };
        gen_clustering(&spec).expect("derived spec is feasible")
    };
    Instance { system, expert }
}

/// Pair-counting table by checking every unordered pair of the joint vocabulary.
pub fn pair_counts_by_enumeration(system: &Clustering, expert: &Clustering) -> ContingencyTable {
    let mut vocab: Vec<&str> = system
        .classes
        .iter()
        .chain(&expert.classes)
        .flat_map(|c| c.members.iter().map(String::as_str))
        .collect();
    vocab.sort_unstable();
    vocab.dedup();
    let together = |c: &Clustering, a: &str, b: &str| {
        c.classes
            .iter()
            .any(|k| k.members.contains(a) && k.members.contains(b))
    };
    let mut t = ContingencyTable::default();
    for (i, a) in vocab.iter().enumerate() {
        for b in &vocab[i + 1..] {
            match (together(system, a, b), together(expert, a, b)) {
                (true, true) => t.yy += 1,
                (true, false) => t.yn += 1,
                (false, true) => t.ny += 1,
                (false, false) => {}
            }
        }
    }
    t
}
