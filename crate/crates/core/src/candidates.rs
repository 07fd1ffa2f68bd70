//! Filtered corruption sets: the negatives a positive pair may be ranked against.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{unordered, EdgeSplit, Pair, Stage};

/// Which known positives are kept out of the negative pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterPolicy {
    pub exclude_train: bool,
    pub exclude_valid_for_test: bool,
    /// Dynamic graphs (collaboration-style): past links do not imply future
    /// ones, so neither train nor valid positives are filtered.
    pub dynamic_mode: bool,
}

impl Default for FilterPolicy {
    fn default() -> Self {
        Self::standard()
    }
}

impl FilterPolicy {
    pub fn standard() -> Self {
        FilterPolicy {
            exclude_train: true,
            exclude_valid_for_test: true,
            dynamic_mode: false,
        }
    }

    pub fn dynamic() -> Self {
        FilterPolicy {
            dynamic_mode: true,
            ..Self::standard()
        }
    }

    /// `(exclude_train, exclude_valid_for_test)` after applying dynamic mode.
    pub fn effective(&self) -> (bool, bool) {
        if self.dynamic_mode {
            (false, false)
        } else {
            (self.exclude_train, self.exclude_valid_for_test)
        }
    }
}

/// Which endpoint of the positive stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Keep the left endpoint `u`; corruptions are `(u, c)`.
    Left,
    /// Keep the right endpoint `v`; corruptions are `(c, v)`.
    Right,
}

impl Side {
    pub fn anchor_and_partner(self, (u, v): Pair) -> (usize, usize) {
        match self {
            Side::Left => (u, v),
            Side::Right => (v, u),
        }
    }
}

/// Hash index over unordered train and valid positives, built once per run.
#[derive(Debug, Clone, Default)]
pub struct FilterIndex {
    num_nodes: usize,
    train: HashSet<Pair>,
    valid: HashSet<Pair>,
}

impl FilterIndex {
    pub fn from_split(split: &EdgeSplit) -> Self {
        FilterIndex {
            num_nodes: split.num_nodes,
            train: split.train.iter().map(|r| unordered(r.pair())).collect(),
            valid: split.valid.iter().map(|r| unordered(r.pair())).collect(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn in_train(&self, pair: Pair) -> bool {
        self.train.contains(&unordered(pair))
    }

    pub fn in_valid(&self, pair: Pair) -> bool {
        self.valid.contains(&unordered(pair))
    }

    /// True when `pair` is a known positive that the policy removes at `stage`.
    pub fn is_filtered(&self, pair: Pair, policy: FilterPolicy, stage: Stage) -> bool {
        let (train, valid) = policy.effective();
        (train && self.in_train(pair)) || (valid && stage == Stage::Test && self.in_valid(pair))
    }

    /// Full negative check: self-loop, the positive itself, or a filtered positive.
    pub fn rejects(&self, positive: Pair, pair: Pair, policy: FilterPolicy, stage: Stage) -> bool {
        pair.0 == pair.1 || unordered(pair) == unordered(positive) || self.is_filtered(pair, policy, stage)
    }
}

/// Nodes that can replace the partner of `anchor` in one positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub anchor: usize,
    pub partner: usize,
    pub side: Side,
    /// Sorted ascending.
    pub candidates: Vec<usize>,
}

impl CandidateSet {
    /// The corrupted pair for candidate `c`, oriented like the positive.
    pub fn pair_with(&self, c: usize) -> Pair {
        match self.side {
            Side::Left => (self.anchor, c),
            Side::Right => (c, self.anchor),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.candidates.iter().map(|&c| self.pair_with(c))
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.candidates.binary_search(&c).is_ok()
    }
}

/// All admissible corruptions of `positive` that keep the `side` endpoint fixed.
///
/// Never returns the anchor itself or the original partner. Under the standard
/// policy train positives are removed, and at test time valid positives too.
/// Other positives of the same stage are kept.
pub fn corruption_candidates(
    index: &FilterIndex,
    positive: Pair,
    side: Side,
    policy: FilterPolicy,
    stage: Stage,
) -> Result<CandidateSet> {
    let n = index.num_nodes();
    for node in [positive.0, positive.1] {
        if node >= n {
            return Err(Error::Range { node, num_nodes: n });
        }
    }
    let (anchor, partner) = side.anchor_and_partner(positive);
    let candidates = (0..n)
        .filter(|&c| c != anchor && c != partner)
        .filter(|&c| !index.is_filtered((anchor, c), policy, stage))
        .collect();
    Ok(CandidateSet {
        anchor,
        partner,
        side,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeRecord;

    fn split(n: usize, train: &[Pair], valid: &[Pair], test: &[Pair]) -> EdgeSplit {
        let r = |l: &[Pair]| l.iter().map(|&(u, v)| EdgeRecord::new(u, v)).collect();
        EdgeSplit {
            num_nodes: n,
            train: r(train),
            valid: r(valid),
            test: r(test),
            dynamic: false,
        }
    }

    #[test]
    fn three_node_enumeration() {
        let s = split(3, &[], &[], &[(0, 1)]);
        let idx = FilterIndex::from_split(&s);
        let c = corruption_candidates(&idx, (0, 1), Side::Left, FilterPolicy::standard(), Stage::Test).unwrap();
        assert_eq!(c.candidates, vec![2]);
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn train_edge_filtered_unless_dynamic() {
        let s = split(3, &[(0, 2)], &[], &[(0, 1)]);
        let idx = FilterIndex::from_split(&s);
        let std = corruption_candidates(&idx, (0, 1), Side::Left, FilterPolicy::standard(), Stage::Test).unwrap();
        assert!(std.is_empty());
        let dy = corruption_candidates(&idx, (0, 1), Side::Left, FilterPolicy::dynamic(), Stage::Test).unwrap();
        assert_eq!(dy.candidates, vec![2]);
    }

    #[test]
    fn valid_edges_filtered_only_at_test_stage() {
        let s = split(4, &[], &[(3, 1)], &[(0, 1)]);
        let idx = FilterIndex::from_split(&s);
        let p = FilterPolicy::standard();
        let test = corruption_candidates(&idx, (0, 1), Side::Right, p, Stage::Test).unwrap();
        assert_eq!(test.candidates, vec![2]);
        let valid = corruption_candidates(&idx, (0, 1), Side::Right, p, Stage::Valid).unwrap();
        assert_eq!(valid.candidates, vec![2, 3]);
        assert_eq!(valid.pairs().collect::<Vec<_>>(), vec![(2, 1), (3, 1)]);
    }

    #[test]
    fn other_test_positives_are_kept() {
        let s = split(4, &[], &[], &[(0, 1), (0, 2)]);
        let idx = FilterIndex::from_split(&s);
        let c = corruption_candidates(&idx, (0, 1), Side::Left, FilterPolicy::standard(), Stage::Test).unwrap();
        assert_eq!(c.candidates, vec![2, 3]);
    }

    #[test]
    fn out_of_range_positive() {
        let idx = FilterIndex::from_split(&split(3, &[], &[], &[]));
        assert!(matches!(
            corruption_candidates(&idx, (0, 7), Side::Left, FilterPolicy::standard(), Stage::Test),
            Err(Error::Range { node: 7, .. })
        ));
    }
}
