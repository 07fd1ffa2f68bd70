//! Heuristic link predictors and the score-table exchange format.
//!
//! Every scorer follows one orientation rule: a larger score means the pair is
//! more likely to be linked. Scores are always computed on whatever graph the
//! caller passes in, which for evaluation is the training graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{read_text, write_text, FeatureMatrix, Graph, Pair};
use crate::par;

pub const DEFAULT_KATZ_BETA: f64 = 0.05;
pub const DEFAULT_KATZ_MAX_LEN: usize = 5;
pub const DEFAULT_PPR_ALPHA: f64 = 0.15;
pub const DEFAULT_PPR_EPSILON: f64 = 1e-5;
pub const DEFAULT_SP_CUTOFF: usize = 6;

/// Which end of a pair the PPR walk restarts at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PprDirection {
    /// Walk from the first endpoint of the pair (the fixed endpoint when ranking corruptions).
    #[default]
    Forward,
    /// Walk from the second endpoint (the candidate when ranking corruptions).
    Reverse,
    /// Mean of both directions.
    Mean,
}

impl FromStr for PprDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(PprDirection::Forward),
            "reverse" => Ok(PprDirection::Reverse),
            "mean" => Ok(PprDirection::Mean),
            _ => Err(Error::Config(format!(
                "unknown PPR direction {s:?} (expected forward|reverse|mean)"
            ))),
        }
    }
}

impl fmt::Display for PprDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PprDirection::Forward => "forward",
            PprDirection::Reverse => "reverse",
            PprDirection::Mean => "mean",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeuristicKind {
    CommonNeighbors,
    AdamicAdar,
    ResourceAllocation,
    ShortestPath { cutoff: usize },
    Katz { beta: f64, max_len: usize },
    Ppr { alpha: f64, epsilon: f64, direction: PprDirection },
    FeatureCosine,
}

impl HeuristicKind {
    pub fn katz() -> Self {
        HeuristicKind::Katz {
            beta: DEFAULT_KATZ_BETA,
            max_len: DEFAULT_KATZ_MAX_LEN,
        }
    }

    pub fn ppr() -> Self {
        HeuristicKind::Ppr {
            alpha: DEFAULT_PPR_ALPHA,
            epsilon: DEFAULT_PPR_EPSILON,
            direction: PprDirection::Forward,
        }
    }

    pub fn shortest_path() -> Self {
        HeuristicKind::ShortestPath {
            cutoff: DEFAULT_SP_CUTOFF,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HeuristicKind::CommonNeighbors => "cn",
            HeuristicKind::AdamicAdar => "aa",
            HeuristicKind::ResourceAllocation => "ra",
            HeuristicKind::ShortestPath { .. } => "sp",
            HeuristicKind::Katz { .. } => "katz",
            HeuristicKind::Ppr { .. } => "ppr",
            HeuristicKind::FeatureCosine => "cos",
        }
    }

    pub fn needs_features(&self) -> bool {
        matches!(self, HeuristicKind::FeatureCosine)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            HeuristicKind::ShortestPath { cutoff } if cutoff < 1 => {
                Err(Error::Config("shortest-path cutoff must be >= 1".into()))
            }
            HeuristicKind::Katz { beta, max_len } if !(beta > 0.0 && beta.is_finite()) || max_len < 1 => {
                Err(Error::Config(format!(
                    "katz needs beta > 0 and max_len >= 1 (got beta={beta}, max_len={max_len})"
                )))
            }
            HeuristicKind::Ppr { alpha, epsilon, .. } => check_ppr_params(alpha, epsilon),
            _ => Ok(()),
        }
    }

    /// Header text naming the heuristic and its parameters.
    pub fn describe(&self) -> String {
        match *self {
            HeuristicKind::ShortestPath { cutoff } => format!("sp cutoff={cutoff}"),
            HeuristicKind::Katz { beta, max_len } => format!("katz beta={beta} max_len={max_len}"),
            HeuristicKind::Ppr {
                alpha,
                epsilon,
                direction,
            } => format!("ppr alpha={alpha} epsilon={epsilon} direction={direction}"),
            _ => self.name().to_string(),
        }
    }
}

impl FromStr for HeuristicKind {
    type Err = Error;

    /// Parses a bare name with default parameters.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cn" | "common_neighbors" => Ok(HeuristicKind::CommonNeighbors),
            "aa" | "adamic_adar" => Ok(HeuristicKind::AdamicAdar),
            "ra" | "resource_allocation" => Ok(HeuristicKind::ResourceAllocation),
            "sp" | "shortest_path" => Ok(HeuristicKind::shortest_path()),
            "katz" => Ok(HeuristicKind::katz()),
            "ppr" => Ok(HeuristicKind::ppr()),
            "cos" | "cosine" | "feature_cosine" => Ok(HeuristicKind::FeatureCosine),
            other => Err(Error::Config(format!("unknown heuristic {other:?}"))),
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn check_ppr_params(alpha: f64, epsilon: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Config(format!("PPR alpha must be in (0, 1], got {alpha}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Config(format!("PPR epsilon must be > 0, got {epsilon}")));
    }
    Ok(())
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_node(u)?;
    g.check_node(v)
}

/// Calls `f` for each common neighbor of `u` and `v`, in ascending order.
fn for_each_common(g: &Graph, u: usize, v: usize, mut f: impl FnMut(usize)) {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

#[inline]
fn aa_weight(deg: usize) -> f64 {
    if deg <= 1 {
        0.0
    } else {
        1.0 / (deg as f64).ln()
    }
}

#[inline]
fn ra_weight(deg: usize) -> f64 {
    if deg == 0 {
        0.0
    } else {
        1.0 / deg as f64
    }
}

pub fn cn(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    let mut count = 0usize;
    for_each_common(g, u, v, |_| count += 1);
    Ok(count as f64)
}

pub fn aa(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    let mut s = 0.0;
    for_each_common(g, u, v, |w| s += aa_weight(g.degree(w)));
    Ok(s)
}

pub fn ra(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    let mut s = 0.0;
    for_each_common(g, u, v, |w| s += ra_weight(g.degree(w)));
    Ok(s)
}

/// Expands one BFS level; returns the next frontier and the best meeting distance found.
fn expand_level(
    g: &Graph,
    frontier: &[usize],
    depth: usize,
    dist: &mut HashMap<usize, usize>,
    other: &HashMap<usize, usize>,
) -> (Vec<usize>, Option<usize>) {
    let mut next = Vec::new();
    let mut best: Option<usize> = None;
    for &x in frontier {
        for &y in g.neighbors(x) {
            if dist.contains_key(&y) {
                continue;
            }
            dist.insert(y, depth + 1);
            if let Some(&d) = other.get(&y) {
                let total = depth + 1 + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            next.push(y);
        }
    }
    (next, best)
}

/// Hop distance by bidirectional BFS, `None` when longer than `cutoff` or unreachable.
pub fn shortest_path_distance(g: &Graph, u: usize, v: usize, cutoff: usize) -> Result<Option<usize>> {
    check_pair(g, u, v)?;
    if u == v {
        return Ok(Some(0));
    }
    let mut dist_f = HashMap::from([(u, 0usize)]);
    let mut dist_b = HashMap::from([(v, 0usize)]);
    let (mut front_f, mut front_b) = (vec![u], vec![v]);
    let (mut depth_f, mut depth_b) = (0usize, 0usize);
    while !front_f.is_empty() && !front_b.is_empty() && depth_f + depth_b < cutoff {
        let best = if front_f.len() <= front_b.len() {
            let (next, best) = expand_level(g, &front_f, depth_f, &mut dist_f, &dist_b);
            depth_f += 1;
            front_f = next;
            best
        } else {
            let (next, best) = expand_level(g, &front_b, depth_b, &mut dist_b, &dist_f);
            depth_b += 1;
            front_b = next;
            best
        };
        if let Some(d) = best {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Reciprocal hop distance; 0 beyond `cutoff`, and 1.0 for `u == v`.
pub fn shortest_path_score(g: &Graph, u: usize, v: usize, cutoff: usize) -> Result<f64> {
    if cutoff < 1 {
        return Err(Error::Config("shortest-path cutoff must be >= 1".into()));
    }
    Ok(match shortest_path_distance(g, u, v, cutoff)? {
        Some(0) => 1.0,
        Some(d) => 1.0 / d as f64,
        None => 0.0,
    })
}

/// Truncated Katz sums from `source` to every node: `sum_{l=1..L} beta^l * walks_l(source, .)`.
pub fn katz_from(g: &Graph, source: usize, beta: f64, max_len: usize) -> Result<Vec<f64>> {
    g.check_node(source)?;
    HeuristicKind::Katz { beta, max_len }.validate()?;
    let n = g.num_nodes();
    let mut walks = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    let mut acc = vec![0.0f64; n];
    walks[source] = 1.0;
    let mut coef = 1.0;
    for _ in 0..max_len {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (x, &w) in walks.iter().enumerate() {
            if w != 0.0 {
                for &y in g.neighbors(x) {
                    next[y] += w;
                }
            }
        }
        std::mem::swap(&mut walks, &mut next);
        coef *= beta;
        for (a, &w) in acc.iter_mut().zip(&walks) {
            *a += coef * w;
        }
    }
    Ok(acc)
}

pub fn katz(g: &Graph, u: usize, v: usize, beta: f64, max_len: usize) -> Result<f64> {
    g.check_node(v)?;
    Ok(katz_from(g, u, beta, max_len)?[v])
}

/// Sparse result of a forward-push PPR run.
#[derive(Debug, Clone, PartialEq)]
pub struct PprVector {
    pub source: usize,
    /// `(node, estimate)` for every node with nonzero estimate, sorted by node.
    pub estimates: Vec<(usize, f64)>,
    /// `(node, residual)` for every node left with nonzero residual, sorted by node.
    pub residuals: Vec<(usize, f64)>,
}

impl PprVector {
    pub fn get(&self, node: usize) -> f64 {
        self.estimates
            .binary_search_by_key(&node, |&(n, _)| n)
            .map_or(0.0, |i| self.estimates[i].1)
    }

    pub fn total_mass(&self) -> f64 {
        self.estimates.iter().map(|&(_, p)| p).sum()
    }

    pub fn to_map(&self) -> HashMap<usize, f64> {
        self.estimates.iter().copied().collect()
    }
}

/// Approximate personalized PageRank from `source` by forward push.
///
/// A node is pushed while its residual is at least `epsilon * degree`; pushing
/// keeps `alpha` of the residual and spreads the rest evenly over the neighbors.
/// Nodes are processed FIFO, so the result is bit-for-bit reproducible. An
/// isolated source keeps all of its mass.
pub fn ppr(g: &Graph, source: usize, alpha: f64, epsilon: f64) -> Result<PprVector> {
    g.check_node(source)?;
    check_ppr_params(alpha, epsilon)?;
    let n = g.num_nodes();
    let mut p = vec![0.0f64; n];
    let mut r = vec![0.0f64; n];
    let mut queued = vec![false; n];
    let mut touched = vec![source];
    let mut queue = VecDeque::from([source]);
    r[source] = 1.0;
    queued[source] = true;

    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        let ru = r[u];
        let d = g.degree(u);
        if d == 0 {
            p[u] += ru;
            r[u] = 0.0;
            continue;
        }
        if ru < epsilon * d as f64 {
            continue;
        }
        p[u] += alpha * ru;
        r[u] = 0.0;
        let share = (1.0 - alpha) * ru / d as f64;
        if share == 0.0 {
            continue;
        }
        for &w in g.neighbors(u) {
            if r[w] == 0.0 && p[w] == 0.0 {
                touched.push(w);
            }
            r[w] += share;
            if !queued[w] && r[w] >= epsilon * g.degree(w) as f64 {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }

    touched.sort_unstable();
    touched.dedup();
    let estimates = touched.iter().filter(|&&x| p[x] > 0.0).map(|&x| (x, p[x])).collect();
    let residuals = touched.iter().filter(|&&x| r[x] > 0.0).map(|&x| (x, r[x])).collect();
    Ok(PprVector {
        source,
        estimates,
        residuals,
    })
}

/// Cosine similarity of two feature rows; 0 (with a warning) when either row is all zeros.
pub fn feature_cosine(x: &FeatureMatrix, u: usize, v: usize) -> Result<f64> {
    for node in [u, v] {
        if node >= x.num_nodes() {
            return Err(Error::Range {
                node,
                num_nodes: x.num_nodes(),
            });
        }
    }
    let (a, b) = (x.row(u), x.row(v));
    let dot: f64 = a.iter().zip(b).map(|(p, q)| p * q).sum();
    let na = a.iter().map(|p| p * p).sum::<f64>().sqrt();
    let nb = b.iter().map(|q| q * q).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        log::warn!("zero feature vector in cosine({u}, {v}); scoring 0");
        return Ok(0.0);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

enum AnchorData {
    Sparse(HashMap<usize, f64>),
    Dense(Vec<f64>),
    Cosine,
}

/// Scores of one fixed node against any other node, computed once per anchor.
///
/// `score(c)` equals the per-pair scorer applied to `(anchor, c)`. For PPR the
/// direction decides where the walk restarts: `Forward` walks from the anchor,
/// `Reverse` uses the reversibility identity `ppr_c(a) = ppr_a(c) * deg(a) / deg(c)`
/// so that a single push per anchor still suffices.
pub struct AnchorScores<'a> {
    g: &'a Graph,
    x: Option<&'a FeatureMatrix>,
    kind: HeuristicKind,
    anchor: usize,
    data: AnchorData,
}

impl<'a> AnchorScores<'a> {
    pub fn new(g: &'a Graph, x: Option<&'a FeatureMatrix>, kind: HeuristicKind, anchor: usize) -> Result<Self> {
        kind.validate()?;
        g.check_node(anchor)?;
        let data = match kind {
            HeuristicKind::CommonNeighbors | HeuristicKind::AdamicAdar | HeuristicKind::ResourceAllocation => {
                let mut map: HashMap<usize, f64> = HashMap::new();
                for &w in g.neighbors(anchor) {
                    let weight = match kind {
                        HeuristicKind::CommonNeighbors => 1.0,
                        HeuristicKind::AdamicAdar => aa_weight(g.degree(w)),
                        _ => ra_weight(g.degree(w)),
                    };
                    for &c in g.neighbors(w) {
                        *map.entry(c).or_insert(0.0) += weight;
                    }
                }
                AnchorData::Sparse(map)
            }
            HeuristicKind::ShortestPath { cutoff } => {
                let mut map = HashMap::from([(anchor, 1.0)]);
                let mut frontier = vec![anchor];
                let mut seen = HashMap::from([(anchor, 0usize)]);
                for depth in 1..=cutoff {
                    let mut next = Vec::new();
                    for &x in &frontier {
                        for &y in g.neighbors(x) {
                            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y) {
                                e.insert(depth);
                                map.insert(y, 1.0 / depth as f64);
                                next.push(y);
                            }
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    frontier = next;
                }
                AnchorData::Sparse(map)
            }
            HeuristicKind::Katz { beta, max_len } => AnchorData::Dense(katz_from(g, anchor, beta, max_len)?),
            HeuristicKind::Ppr { alpha, epsilon, .. } => AnchorData::Sparse(ppr(g, anchor, alpha, epsilon)?.to_map()),
            HeuristicKind::FeatureCosine => {
                let x = x.ok_or_else(|| Error::Config("feature cosine requires a feature matrix".into()))?;
                x.check_matches(g)?;
                AnchorData::Cosine
            }
        };
        Ok(AnchorScores {
            g,
            x,
            kind,
            anchor,
            data,
        })
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn score(&self, node: usize) -> f64 {
        let raw = |n: usize| match &self.data {
            AnchorData::Sparse(m) => m.get(&n).copied().unwrap_or(0.0),
            AnchorData::Dense(v) => v[n],
            AnchorData::Cosine => feature_cosine(self.x.expect("checked at construction"), self.anchor, n)
                .expect("range checked at construction"),
        };
        match self.kind {
            HeuristicKind::Ppr { direction, .. } => {
                let forward = raw(node);
                let reverse = || {
                    let d = self.g.degree(node);
                    if d == 0 {
                        if node == self.anchor {
                            forward
                        } else {
                            0.0
                        }
                    } else {
                        forward * self.g.degree(self.anchor) as f64 / d as f64
                    }
                };
                match direction {
                    PprDirection::Forward => forward,
                    PprDirection::Reverse => reverse(),
                    PprDirection::Mean => 0.5 * (forward + reverse()),
                }
            }
            _ => raw(node),
        }
    }
}

/// Scores for a list of node pairs, in list order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    /// Free-form description, e.g. `katz beta=0.1 max_len=5` or a model name.
    pub heuristic: String,
    pub pairs: Vec<Pair>,
    pub scores: Vec<f64>,
}

impl ScoreTable {
    pub fn new(heuristic: impl Into<String>, pairs: Vec<Pair>, scores: Vec<f64>) -> Result<Self> {
        if pairs.len() != scores.len() {
            return Err(Error::Validation(format!(
                "{} pairs but {} scores",
                pairs.len(),
                scores.len()
            )));
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            let (u, v) = pairs[i];
            return Err(Error::Validation(format!("non-finite score for pair ({u}, {v})")));
        }
        Ok(ScoreTable {
            heuristic: heuristic.into(),
            pairs,
            scores,
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// TSV: `# <heuristic>` header, then `u<TAB>v<TAB>score` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::with_capacity(16 * self.len() + 32);
        let _ = writeln!(s, "# {}", self.heuristic);
        for (&(u, v), score) in self.pairs.iter().zip(&self.scores) {
            let _ = writeln!(s, "{u}\t{v}\t{score}");
        }
        s
    }

    /// Parses the TSV form. The header is optional so external model outputs
    /// can be plain three-column files (tabs or spaces).
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut heuristic = String::new();
        let mut pairs = Vec::new();
        let mut scores = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if pairs.is_empty() && heuristic.is_empty() {
                    heuristic = h.trim().to_string();
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::parse(i + 1, "expected u, v, score"));
            }
            let id = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("invalid node id {t:?}")))
            };
            let score: f64 = toks[2]
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("invalid score {:?}", toks[2])))?;
            if !score.is_finite() {
                return Err(Error::parse(i + 1, "non-finite score"));
            }
            pairs.push((id(toks[0])?, id(toks[1])?));
            scores.push(score);
        }
        ScoreTable::new(heuristic, pairs, scores)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_tsv(&read_text(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_tsv())
    }

    /// Pair → score index. Repeated pairs must carry identical scores.
    pub fn lookup(&self) -> Result<ScoreLookup> {
        let mut map = HashMap::with_capacity(self.len());
        for (&p, &s) in self.pairs.iter().zip(&self.scores) {
            if let Some(prev) = map.insert(p, s) {
                if prev != s {
                    return Err(Error::Validation(format!(
                        "pair ({}, {}) scored twice with different values",
                        p.0, p.1
                    )));
                }
            }
        }
        Ok(ScoreLookup { map })
    }
}

/// Score index built from one or more tables.
#[derive(Debug, Clone, Default)]
pub struct ScoreLookup {
    map: HashMap<Pair, f64>,
}

impl ScoreLookup {
    pub fn merge(&mut self, other: ScoreLookup) -> Result<()> {
        for (p, s) in other.map {
            if let Some(prev) = self.map.insert(p, s) {
                if prev != s {
                    return Err(Error::Validation(format!(
                        "pair ({}, {}) scored twice with different values",
                        p.0, p.1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exact orientation first, then the reversed pair.
    pub fn get(&self, (u, v): Pair) -> Option<f64> {
        self.map.get(&(u, v)).or_else(|| self.map.get(&(v, u))).copied()
    }

    pub fn require(&self, pair: Pair) -> Result<f64> {
        self.get(pair).ok_or(Error::Coverage { u: pair.0, v: pair.1 })
    }
}

/// Source-grouped chunk size for Katz/PPR batches; bounds dense scratch memory.
const SOURCE_CHUNK: usize = 256;

/// Scores every pair with one heuristic. Values are identical to the per-pair
/// functions; Katz and PPR are computed once per distinct source node.
pub fn score_pairs(g: &Graph, x: Option<&FeatureMatrix>, kind: HeuristicKind, pairs: &[Pair]) -> Result<ScoreTable> {
    kind.validate()?;
    if kind.needs_features() {
        let x = x.ok_or_else(|| Error::Config("feature cosine requires a feature matrix".into()))?;
        x.check_matches(g)?;
    }
    for &(u, v) in pairs {
        check_pair(g, u, v)?;
    }
    let scores = match kind {
        HeuristicKind::CommonNeighbors => par::try_map(pairs, |&(u, v)| cn(g, u, v))?,
        HeuristicKind::AdamicAdar => par::try_map(pairs, |&(u, v)| aa(g, u, v))?,
        HeuristicKind::ResourceAllocation => par::try_map(pairs, |&(u, v)| ra(g, u, v))?,
        HeuristicKind::ShortestPath { cutoff } => {
            par::try_map(pairs, |&(u, v)| shortest_path_score(g, u, v, cutoff))?
        }
        HeuristicKind::FeatureCosine => {
            let x = x.expect("checked above");
            par::try_map(pairs, |&(u, v)| feature_cosine(x, u, v))?
        }
        HeuristicKind::Katz { beta, max_len } => {
            let mut sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            sources.sort_unstable();
            sources.dedup();
            let mut out = vec![0.0; pairs.len()];
            for chunk in sources.chunks(SOURCE_CHUNK) {
                let vecs = par::try_map(chunk, |&s| katz_from(g, s, beta, max_len))?;
                let by_src: HashMap<usize, &Vec<f64>> = chunk.iter().copied().zip(vecs.iter()).collect();
                for (slot, &(u, v)) in out.iter_mut().zip(pairs) {
                    if let Some(vec) = by_src.get(&u) {
                        *slot = vec[v];
                    }
                }
            }
            out
        }
        HeuristicKind::Ppr {
            alpha,
            epsilon,
            direction,
        } => {
            let mut sources: Vec<usize> = Vec::new();
            if direction != PprDirection::Reverse {
                sources.extend(pairs.iter().map(|p| p.0));
            }
            if direction != PprDirection::Forward {
                sources.extend(pairs.iter().map(|p| p.1));
            }
            sources.sort_unstable();
            sources.dedup();
            let mut fwd = vec![0.0; pairs.len()];
            let mut rev = vec![0.0; pairs.len()];
            for chunk in sources.chunks(SOURCE_CHUNK) {
                let vecs = par::try_map(chunk, |&s| ppr(g, s, alpha, epsilon))?;
                let by_src: HashMap<usize, &PprVector> = chunk.iter().copied().zip(vecs.iter()).collect();
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if let Some(pv) = by_src.get(&u) {
                        fwd[i] = pv.get(v);
                    }
                    if let Some(pv) = by_src.get(&v) {
                        rev[i] = pv.get(u);
                    }
                }
            }
            match direction {
                PprDirection::Forward => fwd,
                PprDirection::Reverse => rev,
                PprDirection::Mean => fwd.iter().zip(&rev).map(|(a, b)| 0.5 * (a + b)).collect(),
            }
        }
    };
    ScoreTable::new(kind.describe(), pairs.to_vec(), scores)
}
