//! Evaluation negatives.
//!
//! Three generators share the [`NegativeSet`] container:
//!
//! - **heart**: per positive `(a, b)`, `k/2` hard corruptions `(a, ·)` and
//!   `k/2` hard corruptions `(·, b)`. Each side ranks its filtered candidate set
//!   under every configured heuristic, combines the ranks by taking the best
//!   (minimum) rank per candidate, and keeps the top of the combined order.
//!   Candidates no heuristic scores above zero are only used to top up a short
//!   list, drawn uniformly at random.
//! - **global**: one shared list of uniformly random pairs for all positives.
//! - **per-positive random**: `k` uniformly random corruptions per positive.
//!
//! Every random draw comes from a ChaCha stream keyed by the run seed and the
//! positive's index (and side), so output does not depend on thread count.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::candidates::{corruption_candidates, CandidateSet, FilterIndex, FilterPolicy, Side};
use crate::error::{Error, Result};
use crate::graph::{read_text, unordered, write_text, EdgeSplit, FeatureMatrix, Graph, Pair, Stage};
use crate::heuristics::{AnchorScores, HeuristicKind, ScoreTable};
use crate::par;

/// Consecutive rejected draws after which random sampling gives up.
pub const MAX_CONSECUTIVE_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NegativeMode {
    Heart,
    Global,
    PerPositiveRandom,
}

impl fmt::Display for NegativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NegativeMode::Heart => "heart",
            NegativeMode::Global => "global",
            NegativeMode::PerPositiveRandom => "per_positive_random",
        })
    }
}

impl FromStr for NegativeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heart" => Ok(NegativeMode::Heart),
            "global" => Ok(NegativeMode::Global),
            "per_positive_random" | "per-positive" | "per_positive" => Ok(NegativeMode::PerPositiveRandom),
            _ => Err(Error::Config(format!(
                "unknown negative mode {s:?} (expected heart|global|per-positive)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Negatives {
    /// One list per positive, aligned with `NegativeSet::positives`.
    PerPositive(Vec<Vec<Pair>>),
    /// A single list ranked against every positive.
    Shared(Vec<Pair>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeSet {
    pub mode: NegativeMode,
    /// Negatives per positive (shared list size in global mode).
    pub k: usize,
    pub seed: u64,
    pub positives: Vec<Pair>,
    pub negatives: Negatives,
}

impl NegativeSet {
    /// Negatives that apply to positive `i`.
    pub fn negatives_for(&self, i: usize) -> &[Pair] {
        match &self.negatives {
            Negatives::PerPositive(lists) => &lists[i],
            Negatives::Shared(shared) => shared,
        }
    }

    /// Every distinct pair that needs a score, positives first, in file order.
    pub fn all_pairs(&self) -> (Vec<Pair>, Vec<Pair>) {
        let negs = match &self.negatives {
            Negatives::PerPositive(lists) => lists.concat(),
            Negatives::Shared(shared) => shared.clone(),
        };
        (self.positives.clone(), negs)
    }

    pub fn num_negatives(&self) -> usize {
        match &self.negatives {
            Negatives::PerPositive(lists) => lists.iter().map(Vec::len).sum(),
            Negatives::Shared(shared) => shared.len(),
        }
    }

    /// Text form: `#mode k seed`, then one `u v | n1u n1v ...` line per positive.
    /// Global mode writes the shared list once under `#shared`, then the
    /// positives under `#positives`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "#{} {} {}", self.mode, self.k, self.seed);
        match &self.negatives {
            Negatives::PerPositive(lists) => {
                for (&(u, v), list) in self.positives.iter().zip(lists) {
                    let _ = write!(s, "{u} {v} |");
                    for &(a, b) in list {
                        let _ = write!(s, " {a} {b}");
                    }
                    s.push('\n');
                }
            }
            Negatives::Shared(shared) => {
                s.push_str("#shared\n");
                let flat: Vec<String> = shared.iter().map(|(a, b)| format!("{a} {b}")).collect();
                s.push_str(&flat.join(" "));
                s.push('\n');
                s.push_str("#positives\n");
                for &(u, v) in &self.positives {
                    let _ = writeln!(s, "{u} {v}");
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty negative-set file"))?;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| Error::parse(1, "expected `#mode k seed` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(1, "expected `#mode k seed` header"));
        }
        let mode: NegativeMode = fields[0].parse().map_err(|_| Error::parse(1, "unknown mode"))?;
        let k = fields[1].parse().map_err(|_| Error::parse(1, "invalid k"))?;
        let seed = fields[2].parse().map_err(|_| Error::parse(1, "invalid seed"))?;

        let pairs_of = |body: &str, line: usize| -> Result<Vec<Pair>> {
            let ids = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("invalid node id {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if ids.len() % 2 != 0 {
                return Err(Error::parse(line, "odd number of node ids"));
            }
            Ok(ids.chunks(2).map(|c| (c[0], c[1])).collect())
        };
        let single_pair = |body: &str, line: usize| -> Result<Pair> {
            let p = pairs_of(body, line)?;
            match p.as_slice() {
                [one] => Ok(*one),
                _ => Err(Error::parse(line, "expected one positive pair")),
            }
        };

        let mut positives = Vec::new();
        let negatives = if mode == NegativeMode::Global {
            let mut shared: Option<Vec<Pair>> = None;
            let mut section = "";
            for (i, line) in lines {
                let line_no = i + 1;
                match line.trim() {
                    "#shared" => section = "shared",
                    "#positives" => section = "positives",
                    body if section == "shared" => {
                        if shared.is_some() {
                            return Err(Error::parse(line_no, "shared list must be a single line"));
                        }
                        shared = Some(pairs_of(body, line_no)?);
                    }
                    body if section == "positives" => positives.push(single_pair(body, line_no)?),
                    _ => return Err(Error::parse(line_no, "content outside #shared/#positives")),
                }
            }
            Negatives::Shared(shared.ok_or_else(|| Error::parse(0, "missing #shared section"))?)
        } else {
            let mut lists = Vec::new();
            for (i, line) in lines {
                let (pos, negs) = line
                    .split_once('|')
                    .ok_or_else(|| Error::parse(i + 1, "expected `u v | negatives`"))?;
                positives.push(single_pair(pos, i + 1)?);
                lists.push(pairs_of(negs, i + 1)?);
            }
            Negatives::PerPositive(lists)
        };
        Ok(NegativeSet {
            mode,
            k,
            seed,
            positives,
            negatives,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_text())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&read_text(path)?)
    }
}

/// Candidates ordered by one heuristic: descending score, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicRanking {
    /// Best first; position `i` has rank `i + 1`.
    pub order: Vec<usize>,
}

impl HeuristicRanking {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `(node, rank)` pairs; ranks run `1..=len`.
    pub fn ranks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order.iter().enumerate().map(|(i, &n)| (n, i + 1))
    }

    pub fn rank_of(&self, node: usize) -> Option<usize> {
        self.order.iter().position(|&n| n == node).map(|i| i + 1)
    }
}

/// Ranks parallel `nodes`/`scores` slices.
pub fn rank_nodes(nodes: &[usize], scores: &[f64]) -> HeuristicRanking {
    let mut idx: Vec<usize> = (0..nodes.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(nodes[a].cmp(&nodes[b])));
    HeuristicRanking {
        order: idx.into_iter().map(|i| nodes[i]).collect(),
    }
}

/// Ranks a candidate set from a table holding one score per corrupted pair.
pub fn rank_by_heuristic(set: &CandidateSet, scores: &ScoreTable) -> Result<HeuristicRanking> {
    let lookup = scores.lookup()?;
    let vals = set
        .candidates
        .iter()
        .map(|&c| {
            lookup.get(set.pair_with(c)).ok_or_else(|| {
                let (u, v) = set.pair_with(c);
                Error::Internal(format!("no score for candidate pair ({u}, {v})"))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(rank_nodes(&set.candidates, &vals))
}

/// Candidates ordered by combined (minimum) rank, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedRanking {
    pub order: Vec<usize>,
    /// Combined rank of `order[i]`.
    pub totals: Vec<usize>,
}

impl CombinedRanking {
    fn from_totals(mut totals: Vec<(usize, usize)>) -> Self {
        totals.sort_unstable_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        CombinedRanking {
            order: totals.iter().map(|t| t.0).collect(),
            totals: totals.iter().map(|t| t.1).collect(),
        }
    }
}

/// Combines rankings of one candidate set by taking each candidate's best rank.
pub fn combine_ranks(rankings: &[HeuristicRanking]) -> Result<CombinedRanking> {
    let first = rankings
        .first()
        .ok_or_else(|| Error::Internal("no rankings to combine".into()))?;
    let mut best: HashMap<usize, usize> = first.ranks().collect();
    for r in &rankings[1..] {
        if r.len() != best.len() {
            return Err(Error::Internal("rankings cover different candidate sets".into()));
        }
        for (node, rank) in r.ranks() {
            let slot = best
                .get_mut(&node)
                .ok_or_else(|| Error::Internal("rankings cover different candidate sets".into()))?;
            *slot = (*slot).min(rank);
        }
    }
    Ok(CombinedRanking::from_totals(best.into_iter().collect()))
}

/// Min-rank combination where each heuristic ranks only the candidates it scores
/// above zero. Candidates unscored by every heuristic are left out.
pub fn combine_partial_ranks(rankings: &[HeuristicRanking]) -> CombinedRanking {
    let mut best: HashMap<usize, usize> = HashMap::new();
    for r in rankings {
        for (node, rank) in r.ranks() {
            best.entry(node).and_modify(|b| *b = (*b).min(rank)).or_insert(rank);
        }
    }
    CombinedRanking::from_totals(best.into_iter().collect())
}

/// Picks up to `k_half` negatives for one side of one positive.
///
/// `scores[i][j]` is heuristic `i`'s score of `set.candidates[j]`. Returned
/// pairs are oriented like the positive: ranked picks first, then random fill.
pub fn select_negatives<R: Rng + ?Sized>(
    set: &CandidateSet,
    scores: &[Vec<f64>],
    k_half: usize,
    rng: &mut R,
) -> Vec<Pair> {
    if k_half == 0 || set.is_empty() {
        return Vec::new();
    }
    let rankings: Vec<HeuristicRanking> = scores
        .iter()
        .map(|s| {
            let (nodes, vals): (Vec<usize>, Vec<f64>) = set
                .candidates
                .iter()
                .zip(s)
                .filter(|(_, &v)| v > 0.0)
                .map(|(&c, &v)| (c, v))
                .unzip();
            rank_nodes(&nodes, &vals)
        })
        .collect();
    let combined = combine_partial_ranks(&rankings);
    let mut picked: Vec<usize> = combined.order.iter().copied().take(k_half).collect();
    if picked.len() < k_half {
        let scored: HashSet<usize> = combined.order.iter().copied().collect();
        let pool: Vec<usize> = set.candidates.iter().copied().filter(|c| !scored.contains(c)).collect();
        let need = (k_half - picked.len()).min(pool.len());
        picked.extend(rand::seq::index::sample(rng, pool.len(), need).into_iter().map(|i| pool[i]));
    }
    picked.into_iter().map(|c| set.pair_with(c)).collect()
}

/// Per-side RNG stream for positive `index`.
pub fn side_rng(seed: u64, index: usize, side: Side) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * index as u64 + u64::from(side == Side::Right));
    rng
}

fn positive_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Hard negatives for one endpoint, scoring candidates with fresh per-anchor scorers.
pub fn heart_negatives_for_endpoint<R: Rng + ?Sized>(
    g: &Graph,
    x: Option<&FeatureMatrix>,
    set: &CandidateSet,
    heuristics: &[HeuristicKind],
    k_half: usize,
    rng: &mut R,
) -> Result<Vec<Pair>> {
    let scorers = heuristics
        .iter()
        .map(|&h| AnchorScores::new(g, x, h, set.anchor))
        .collect::<Result<Vec<_>>>()?;
    let scores: Vec<Vec<f64>> = scorers
        .iter()
        .map(|s| set.candidates.iter().map(|&c| s.score(c)).collect())
        .collect();
    Ok(select_negatives(set, &scores, k_half, rng))
}

/// Heuristics used to rank corruptions.
#[derive(Debug, Clone, PartialEq)]
pub struct HeartConfig {
    pub heuristics: Vec<HeuristicKind>,
}

impl HeartConfig {
    /// RA and PPR, plus feature cosine when features are available.
    pub fn default_for(has_features: bool) -> Self {
        let mut heuristics = vec![HeuristicKind::ResourceAllocation, HeuristicKind::ppr()];
        if has_features {
            heuristics.push(HeuristicKind::FeatureCosine);
        }
        HeartConfig { heuristics }
    }

    pub fn validate(&self, has_features: bool) -> Result<()> {
        if self.heuristics.is_empty() {
            return Err(Error::Config("at least one heuristic is required".into()));
        }
        for h in &self.heuristics {
            h.validate()?;
            if h.needs_features() && !has_features {
                return Err(Error::Config(format!("heuristic {} requires features", h.name())));
            }
        }
        Ok(())
    }
}

fn check_positives(positives: &[Pair], num_nodes: usize) -> Result<()> {
    for &(u, v) in positives {
        for node in [u, v] {
            if node >= num_nodes {
                return Err(Error::Range { node, num_nodes });
            }
        }
    }
    Ok(())
}

/// Hard negatives for explicit positives; see the module docs.
///
/// Side lists are not rebalanced: if one side has fewer than `k/2` candidates,
/// that positive simply gets fewer than `k` negatives.
#[allow(clippy::too_many_arguments)]
pub fn generate_heart_for(
    g: &Graph,
    x: Option<&FeatureMatrix>,
    index: &FilterIndex,
    positives: &[Pair],
    stage: Stage,
    k: usize,
    config: &HeartConfig,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    if !k.is_multiple_of(2) {
        return Err(Error::Config(format!("k must be even, got {k}")));
    }
    config.validate(x.is_some())?;
    if let Some(x) = x {
        x.check_matches(g)?;
    }
    if index.num_nodes() != g.num_nodes() {
        return Err(Error::Validation("filter index and graph disagree on node count".into()));
    }
    check_positives(positives, g.num_nodes())?;
    let k_half = k / 2;

    // Group (positive, side) jobs by anchor so each anchor is scored once.
    let mut jobs: Vec<(usize, usize, Side)> = Vec::with_capacity(2 * positives.len());
    for (i, &p) in positives.iter().enumerate() {
        for side in [Side::Left, Side::Right] {
            jobs.push((side.anchor_and_partner(p).0, i, side));
        }
    }
    jobs.sort_unstable_by_key(|j| (j.0, j.1, j.2 == Side::Right));
    let mut groups: Vec<&[(usize, usize, Side)]> = Vec::new();
    let mut start = 0;
    for i in 1..=jobs.len() {
        if i == jobs.len() || jobs[i].0 != jobs[start].0 {
            groups.push(&jobs[start..i]);
            start = i;
        }
    }

    let results = par::try_map(&groups, |group| -> Result<Vec<(usize, Side, Vec<Pair>)>> {
        let anchor = group[0].0;
        let scorers = config
            .heuristics
            .iter()
            .map(|&h| AnchorScores::new(g, x, h, anchor))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(group.len());
        for &(_, i, side) in group.iter() {
            let set = corruption_candidates(index, positives[i], side, policy, stage)?;
            let scores: Vec<Vec<f64>> = scorers
                .iter()
                .map(|s| set.candidates.iter().map(|&c| s.score(c)).collect())
                .collect();
            let mut rng = side_rng(seed, i, side);
            out.push((i, side, select_negatives(&set, &scores, k_half, &mut rng)));
        }
        Ok(out)
    })?;

    let mut left = vec![Vec::new(); positives.len()];
    let mut right = vec![Vec::new(); positives.len()];
    for (i, side, negs) in results.into_iter().flatten() {
        match side {
            Side::Left => left[i] = negs,
            Side::Right => right[i] = negs,
        }
    }
    let lists = left
        .into_iter()
        .zip(right)
        .map(|(mut l, r)| {
            l.extend(r);
            l
        })
        .collect();
    Ok(NegativeSet {
        mode: NegativeMode::Heart,
        k,
        seed,
        positives: positives.to_vec(),
        negatives: Negatives::PerPositive(lists),
    })
}

/// Hard negatives for every positive of `stage` in `split`.
#[allow(clippy::too_many_arguments)]
pub fn generate_heart(
    g: &Graph,
    x: Option<&FeatureMatrix>,
    split: &EdgeSplit,
    stage: Stage,
    k: usize,
    config: &HeartConfig,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    let index = FilterIndex::from_split(split);
    generate_heart_for(g, x, &index, &split.positives(stage), stage, k, config, policy, seed)
}

/// One shared list of `count` distinct uniform random pairs.
///
/// Draws are rejected when they are self-loops, filtered by `policy`, equal to
/// one of `positives`, or already drawn.
pub fn generate_global_random_for(
    index: &FilterIndex,
    positives: &[Pair],
    stage: Stage,
    count: usize,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    if count == 0 {
        return Err(Error::Config("count must be >= 1".into()));
    }
    let n = index.num_nodes();
    check_positives(positives, n)?;
    if n < 2 {
        return Err(Error::Saturation { draws: 0 });
    }
    let pos_set: HashSet<Pair> = positives.iter().map(|&p| unordered(p)).collect();
    let mut seen: HashSet<Pair> = HashSet::with_capacity(count);
    let mut shared = Vec::with_capacity(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0usize;
    while shared.len() < count {
        let pair = (rng.random_range(0..n), rng.random_range(0..n));
        let key = unordered(pair);
        let bad = pair.0 == pair.1
            || index.is_filtered(pair, policy, stage)
            || pos_set.contains(&key)
            || seen.contains(&key);
        if bad {
            rejected += 1;
            if rejected > MAX_CONSECUTIVE_REJECTIONS {
                return Err(Error::Saturation { draws: rejected });
            }
            continue;
        }
        rejected = 0;
        seen.insert(key);
        shared.push(pair);
    }
    Ok(NegativeSet {
        mode: NegativeMode::Global,
        k: count,
        seed,
        positives: positives.to_vec(),
        negatives: Negatives::Shared(shared),
    })
}

pub fn generate_global_random(
    split: &EdgeSplit,
    stage: Stage,
    count: usize,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    let index = FilterIndex::from_split(split);
    generate_global_random_for(&index, &split.positives(stage), stage, count, policy, seed)
}

/// `k` distinct random corruptions per positive; each draw picks the kept
/// endpoint uniformly, then a uniform replacement node.
pub fn generate_per_positive_random_for(
    index: &FilterIndex,
    positives: &[Pair],
    stage: Stage,
    k: usize,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    if k == 0 {
        return Err(Error::Config("k must be >= 1".into()));
    }
    let n = index.num_nodes();
    check_positives(positives, n)?;
    let idx: Vec<usize> = (0..positives.len()).collect();
    let lists = par::try_map(&idx, |&i| -> Result<Vec<Pair>> {
        let positive = positives[i];
        let mut rng = positive_rng(seed, i);
        let mut seen = HashSet::with_capacity(k);
        let mut out = Vec::with_capacity(k);
        let mut rejected = 0usize;
        while out.len() < k {
            let side = if rng.random_bool(0.5) { Side::Left } else { Side::Right };
            let c = rng.random_range(0..n);
            let (anchor, _) = side.anchor_and_partner(positive);
            let pair = match side {
                Side::Left => (anchor, c),
                Side::Right => (c, anchor),
            };
            if index.rejects(positive, pair, policy, stage) || !seen.insert(unordered(pair)) {
                rejected += 1;
                if rejected > MAX_CONSECUTIVE_REJECTIONS {
                    return Err(Error::Saturation { draws: rejected });
                }
                continue;
            }
            rejected = 0;
            out.push(pair);
        }
        Ok(out)
    })?;
    Ok(NegativeSet {
        mode: NegativeMode::PerPositiveRandom,
        k,
        seed,
        positives: positives.to_vec(),
        negatives: Negatives::PerPositive(lists),
    })
}

pub fn generate_per_positive_random(
    split: &EdgeSplit,
    stage: Stage,
    k: usize,
    policy: FilterPolicy,
    seed: u64,
) -> Result<NegativeSet> {
    let index = FilterIndex::from_split(split);
    generate_per_positive_random_for(&index, &split.positives(stage), stage, k, policy, seed)
}

/// Uniform subsample of `n` positives without replacement, kept in original order.
pub fn subsample_positives(positives: &[Pair], n: usize, seed: u64) -> Vec<Pair> {
    if n >= positives.len() {
        return positives.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut keep = rand::seq::index::sample(&mut rng, positives.len(), n).into_vec();
    keep.sort_unstable();
    keep.into_iter().map(|i| positives[i]).collect()
}

/// Checks a negative set against the filter it was generated under.
/// Returns a description of the first violation.
pub fn check_filter_compliance(
    negs: &NegativeSet,
    index: &FilterIndex,
    policy: FilterPolicy,
    stage: Stage,
) -> std::result::Result<(), String> {
    for (i, &pos) in negs.positives.iter().enumerate() {
        for &pair in negs.negatives_for(i) {
            if pair.0 == pair.1 {
                return Err(format!("self-loop {pair:?} for positive {pos:?}"));
            }
            if negs.mode != NegativeMode::Global {
                if unordered(pair) == unordered(pos) {
                    return Err(format!("positive {pos:?} listed as its own negative"));
                }
                let shares = pair.0 == pos.0 || pair.1 == pos.1;
                if !shares {
                    return Err(format!("{pair:?} is not a corruption of {pos:?}"));
                }
            }
            if index.is_filtered(pair, policy, stage) {
                return Err(format!("{pair:?} is a filtered positive"));
            }
        }
    }
    Ok(())
}
