//! Immutable undirected graphs in CSR form, node features and edge splits.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A node pair. Orientation is meaningful only where documented
/// (corruptions keep the fixed endpoint in place).
pub type Pair = (usize, usize);

/// Canonical unordered form of a pair (smaller id first).
#[inline]
pub fn unordered((u, v): Pair) -> Pair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Counts of entries dropped while normalizing an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Undirected simple graph with sorted CSR adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    pub fn empty(num_nodes: usize) -> Self {
        Graph {
            offsets: vec![0; num_nodes + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from arbitrary pairs: symmetrized, deduplicated, self-loops dropped.
    pub fn from_edges<I>(num_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Pair>,
    {
        Self::from_edges_with_stats(num_nodes, edges).map(|(g, _)| g)
    }

    pub fn from_edges_with_stats<I>(num_nodes: usize, edges: I) -> Result<(Self, BuildStats)>
    where
        I: IntoIterator<Item = Pair>,
    {
        let mut stats = BuildStats::default();
        let mut canon: Vec<Pair> = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= num_nodes {
                    return Err(Error::Range { node, num_nodes });
                }
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            canon.push(unordered((u, v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        stats.duplicates = before - canon.len();

        let mut degree = vec![0usize; num_nodes];
        for &(u, v) in &canon {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(num_nodes + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..num_nodes].to_vec();
        let mut targets = vec![0usize; 2 * canon.len()];
        for &(u, v) in &canon {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for u in 0..num_nodes {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Ok((Graph { offsets, targets }, stats))
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_nodes()).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_nodes()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Sorted neighbor list of `u`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_nodes() && v < self.num_nodes() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node < self.num_nodes() {
            Ok(())
        } else {
            Err(Error::Range {
                node,
                num_nodes: self.num_nodes(),
            })
        }
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.num_nodes()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Node-by-node check of the CSR invariants: sorted, simple, symmetric.
    pub fn check_invariants(&self) -> Result<()> {
        for u in 0..self.num_nodes() {
            let nb = self.neighbors(u);
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Validation(format!("neighbors of {u} not strictly sorted")));
            }
            for &v in nb {
                if v == u {
                    return Err(Error::Validation(format!("self-loop at {u}")));
                }
                if v >= self.num_nodes() || self.neighbors(v).binary_search(&u).is_err() {
                    return Err(Error::Validation(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// One line of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub year: Option<i64>,
}

impl EdgeRecord {
    pub fn new(u: usize, v: usize) -> Self {
        EdgeRecord { u, v, year: None }
    }

    pub fn pair(&self) -> Pair {
        (self.u, self.v)
    }
}

fn parse_record(line: &str, line_no: usize) -> Result<EdgeRecord> {
    let mut it = line.split_whitespace();
    let mut id = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line_no, format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| Error::parse(line_no, format!("invalid node id {tok:?}")))
    };
    let u = id("source")?;
    let v = id("target")?;
    let year = match it.next() {
        Some(tok) => Some(
            tok.parse::<i64>()
                .map_err(|_| Error::parse(line_no, format!("invalid timestamp {tok:?}")))?,
        ),
        None => None,
    };
    if let Some(extra) = it.next() {
        return Err(Error::parse(line_no, format!("unexpected token {extra:?}")));
    }
    Ok(EdgeRecord { u, v, year })
}

/// Parses "u v" or "u v year" lines; blank lines and `#` comments are skipped.
/// Line numbers in errors are 1-based.
pub fn parse_edge_records(text: &str) -> Result<Vec<EdgeRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_record(line, i + 1)?);
    }
    Ok(out)
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_edge_records(path: &Path) -> Result<Vec<EdgeRecord>> {
    parse_edge_records(&read_text(path)?)
}

/// Builds a graph from edge-list text. Without `num_nodes` the node count is
/// `max id + 1`; with it, larger ids are range errors.
pub fn graph_from_edge_text(text: &str, num_nodes: Option<usize>) -> Result<(Graph, BuildStats)> {
    let records = parse_edge_records(text)?;
    let n = match num_nodes {
        Some(n) => n,
        None => records.iter().map(|r| r.u.max(r.v) + 1).max().unwrap_or(0),
    };
    let (g, stats) = Graph::from_edges_with_stats(n, records.iter().map(EdgeRecord::pair))?;
    if stats.self_loops > 0 || stats.duplicates > 0 {
        log::warn!(
            "edge list normalized: dropped {} self-loops and {} duplicate edges",
            stats.self_loops,
            stats.duplicates
        );
    }
    Ok((g, stats))
}

pub fn load_edge_list(path: &Path, num_nodes: Option<usize>) -> Result<Graph> {
    graph_from_edge_text(&read_text(path)?, num_nodes).map(|(g, _)| g)
}

/// Maps arbitrary node labels onto dense ids `0..n` in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.get(id).map(String::as_str)
    }

    /// Relabels an edge list whose first two columns are arbitrary tokens.
    pub fn relabel_edge_text(text: &str) -> Result<(Vec<EdgeRecord>, IdMap)> {
        let mut map = IdMap::default();
        let mut out = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 || toks.len() > 3 {
                return Err(Error::parse(i + 1, "expected 2 or 3 columns"));
            }
            let year = match toks.get(2) {
                Some(t) => Some(
                    t.parse::<i64>()
                        .map_err(|_| Error::parse(i + 1, format!("invalid timestamp {t:?}")))?,
                ),
                None => None,
            };
            let u = map.intern(toks[0]);
            let v = map.intern(toks[1]);
            out.push(EdgeRecord { u, v, year });
        }
        Ok((out, map))
    }

    /// Sidecar format: one `label<TAB>id` line per node, ordered by id.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (id, label) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "{label}\t{id}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut map = IdMap::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (label, id) = line
                .rsplit_once('\t')
                .ok_or_else(|| Error::parse(i + 1, "expected label<TAB>id"))?;
            let id: usize = id
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("invalid id {id:?}")))?;
            if id != map.len() || map.index.contains_key(label) {
                return Err(Error::parse(i + 1, "id map must list dense ids in order"));
            }
            map.intern(label);
        }
        Ok(map)
    }
}

/// Dense row-major node feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    dim: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * dim {
            return Err(Error::Validation(format!(
                "feature buffer has {} values, expected {rows}x{dim}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::Validation(format!(
                "non-finite feature at row {} column {}",
                i / dim.max(1),
                i % dim.max(1)
            )));
        }
        Ok(FeatureMatrix { rows, dim, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Validation(format!("row {r} has a different length")));
        }
        Self::new(rows.len(), dim, rows.concat())
    }

    pub fn num_nodes(&self) -> usize {
        self.rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.values[u * self.dim..(u + 1) * self.dim]
    }

    pub fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.rows != g.num_nodes() {
            return Err(Error::Validation(format!(
                "feature matrix has {} rows but graph has {} nodes",
                self.rows,
                g.num_nodes()
            )));
        }
        Ok(())
    }
}

/// Parses feature CSV. Error rows are 0-based (row index of the matrix).
pub fn parse_features(text: &str) -> Result<FeatureMatrix> {
    let mut values = Vec::new();
    let mut dim: Option<usize> = None;
    let mut rows = 0usize;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row = rows;
        let mut count = 0usize;
        for tok in line.split(',') {
            let x: f64 = tok.trim().parse().map_err(|_| Error::Parse {
                line: row,
                message: format!("invalid number {tok:?} in row {row}"),
            })?;
            if !x.is_finite() {
                return Err(Error::Validation(format!("non-finite value in row {row}")));
            }
            values.push(x);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => {
                return Err(Error::Parse {
                    line: row,
                    message: format!("row {row} has {count} columns, expected {d}"),
                })
            }
            _ => {}
        }
        rows += 1;
    }
    FeatureMatrix::new(rows, dim.unwrap_or(0), values)
}

pub fn load_features(path: &Path) -> Result<FeatureMatrix> {
    parse_features(&read_text(path)?)
}

/// Train/valid/test positive edges over a fixed node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSplit {
    pub num_nodes: usize,
    pub train: Vec<EdgeRecord>,
    pub valid: Vec<EdgeRecord>,
    pub test: Vec<EdgeRecord>,
    /// Dynamic graphs may repeat a pair across sections with different timestamps.
    pub dynamic: bool,
}

/// Evaluation stage a set of positives belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Valid,
    Test,
}

impl std::str::FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "valid" => Ok(Stage::Valid),
            "test" => Ok(Stage::Test),
            _ => Err(Error::Config(format!("unknown stage {s:?} (expected valid|test)"))),
        }
    }
}

impl EdgeSplit {
    pub fn positives(&self, stage: Stage) -> Vec<Pair> {
        let list = match stage {
            Stage::Valid => &self.valid,
            Stage::Test => &self.test,
        };
        list.iter().map(EdgeRecord::pair).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for r in self.train.iter().chain(&self.valid).chain(&self.test) {
            for node in [r.u, r.v] {
                if node >= self.num_nodes {
                    return Err(Error::Range {
                        node,
                        num_nodes: self.num_nodes,
                    });
                }
            }
            if r.u == r.v {
                return Err(Error::Validation(format!("self-loop ({}, {}) in split", r.u, r.v)));
            }
        }
        if !self.dynamic {
            let mut seen: HashMap<Pair, &str> = HashMap::new();
            for (name, list) in [("train", &self.train), ("valid", &self.valid), ("test", &self.test)] {
                let mut local = HashSet::new();
                for r in list {
                    let p = unordered(r.pair());
                    if !local.insert(p) {
                        continue;
                    }
                    if let Some(prev) = seen.insert(p, name) {
                        return Err(Error::Validation(format!(
                            "pair ({}, {}) appears in both {prev} and {name}",
                            p.0, p.1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Three-section text form. A `# num_nodes N` line keeps isolated nodes.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# num_nodes {}", self.num_nodes);
        if self.dynamic {
            s.push_str("# dynamic\n");
        }
        for (name, list) in [("#train", &self.train), ("#valid", &self.valid), ("#test", &self.test)] {
            s.push_str(name);
            s.push('\n');
            for r in list {
                match r.year {
                    Some(y) => {
                        let _ = writeln!(s, "{} {} {}", r.u, r.v, y);
                    }
                    None => {
                        let _ = writeln!(s, "{} {}", r.u, r.v);
                    }
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut num_nodes: Option<usize> = None;
        let mut dynamic = false;
        let mut sections: [Vec<EdgeRecord>; 3] = Default::default();
        let mut current: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "#train" => current = Some(0),
                "#valid" => current = Some(1),
                "#test" => current = Some(2),
                _ if line.starts_with('#') => {
                    let body = line.trim_start_matches('#').trim();
                    if let Some(n) = body.strip_prefix("num_nodes") {
                        num_nodes = Some(n.trim().parse().map_err(|_| {
                            Error::parse(i + 1, format!("invalid node count {:?}", n.trim()))
                        })?);
                    } else if body == "dynamic" {
                        dynamic = true;
                    }
                }
                _ => {
                    let idx = current
                        .ok_or_else(|| Error::parse(i + 1, "edge before any #train/#valid/#test section"))?;
                    sections[idx].push(parse_record(line, i + 1)?);
                }
            }
        }
        let [train, valid, test] = sections;
        let inferred = train
            .iter()
            .chain(&valid)
            .chain(&test)
            .map(|r| r.u.max(r.v) + 1)
            .max()
            .unwrap_or(0);
        let split = EdgeSplit {
            num_nodes: num_nodes.unwrap_or(inferred),
            train,
            valid,
            test,
            dynamic,
        };
        split.validate()?;
        Ok(split)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&read_text(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_text())
    }
}

/// Seeded shuffle-and-partition. Valid and test sizes are floored; train takes the rest.
pub fn make_split(num_nodes: usize, edges: &[EdgeRecord], ratios: [f64; 3], seed: u64) -> Result<EdgeSplit> {
    if edges.is_empty() {
        return Err(Error::Validation("cannot split an empty edge list".into()));
    }
    if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
        return Err(Error::Config(format!("split ratios must be non-negative: {ratios:?}")));
    }
    let total: f64 = ratios.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!("split ratios sum to {total}, expected 1")));
    }
    let n = edges.len();
    // Tolerance so 0.05 * 20 floors to 1 rather than 0 on representation error.
    let floor = |r: f64| ((n as f64) * r + 1e-9).floor() as usize;
    let n_valid = floor(ratios[1]);
    let n_test = floor(ratios[2]);
    let n_train = n - n_valid - n_test;

    let mut shuffled = edges.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    let test = shuffled.split_off(n_train + n_valid);
    let valid = shuffled.split_off(n_train);
    let split = EdgeSplit {
        num_nodes,
        train: shuffled,
        valid,
        test,
        dynamic: false,
    };
    split.validate()?;
    Ok(split)
}

/// Graph the heuristics see: train edges, plus valid edges when `include_valid`.
pub fn training_graph(split: &EdgeSplit, include_valid: bool) -> Result<Graph> {
    if split.train.is_empty() && !include_valid {
        log::warn!("training graph has no edges");
    }
    let extra: &[EdgeRecord] = if include_valid { &split.valid } else { &[] };
    Graph::from_edges(
        split.num_nodes,
        split.train.iter().chain(extra).map(EdgeRecord::pair),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recs(pairs: &[Pair]) -> Vec<EdgeRecord> {
        pairs.iter().map(|&(u, v)| EdgeRecord::new(u, v)).collect()
    }

    #[test]
    fn path_graph_degrees() {
        let (g, _) = graph_from_edge_text("0 1\n1 2", None).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn reversed_duplicate_collapses() {
        let (g, stats) = graph_from_edge_text("0 1\n1 0", None).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(stats.duplicates, 1);
    }

    #[test]
    fn self_loop_dropped_and_counted() {
        let (g, stats) = graph_from_edge_text("0 0\n0 1", None).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(stats.self_loops, 1);
    }

    #[test]
    fn comments_and_year_column() {
        let (g, _) = graph_from_edge_text("# header\n0 1 2019\n\n2 1 2020\n", None).unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match graph_from_edge_text("0 1\n1 x\n", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn id_beyond_node_count_is_range_error() {
        assert!(matches!(
            graph_from_edge_text("0 5", Some(3)),
            Err(Error::Range { node: 5, num_nodes: 3 })
        ));
    }

    #[test]
    fn features_identity_and_row() {
        let x = parse_features("1,0\n0,1").unwrap();
        assert_eq!((x.num_nodes(), x.dim()), (2, 2));
        assert_eq!(x.row(1), &[0.0, 1.0]);
        let y = parse_features("1,2,3").unwrap();
        assert_eq!((y.num_nodes(), y.dim()), (1, 3));
    }

    #[test]
    fn feature_errors() {
        assert!(matches!(parse_features("1,x"), Err(Error::Parse { line: 0, .. })));
        assert!(matches!(parse_features("1,2\n3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_features("1,inf"), Err(Error::Validation(_))));
    }

    #[test]
    fn split_sizes_follow_floor_rule() {
        let edges: Vec<EdgeRecord> = (0..100).map(|i| EdgeRecord::new(i, i + 1)).collect();
        let s = make_split(101, &edges, [0.85, 0.05, 0.10], 7).unwrap();
        assert_eq!((s.train.len(), s.valid.len(), s.test.len()), (85, 5, 10));

        let edges: Vec<EdgeRecord> = (0..20).map(|i| EdgeRecord::new(i, i + 1)).collect();
        let s = make_split(21, &edges, [0.85, 0.05, 0.10], 7).unwrap();
        assert_eq!((s.train.len(), s.valid.len(), s.test.len()), (17, 1, 2));
    }

    #[test]
    fn split_is_deterministic() {
        let edges: Vec<EdgeRecord> = (0..50).map(|i| EdgeRecord::new(i, i + 1)).collect();
        let a = make_split(51, &edges, [0.85, 0.05, 0.10], 3).unwrap();
        let b = make_split(51, &edges, [0.85, 0.05, 0.10], 3).unwrap();
        assert_eq!(a, b);
        let c = make_split(51, &edges, [0.85, 0.05, 0.10], 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn split_rejects_bad_input() {
        assert!(matches!(make_split(2, &[], [0.85, 0.05, 0.10], 0), Err(Error::Validation(_))));
        let e = recs(&[(0, 1)]);
        assert!(matches!(make_split(2, &e, [0.8, 0.05, 0.10], 0), Err(Error::Config(_))));
    }

    #[test]
    fn training_graph_protocol_flag() {
        let split = EdgeSplit {
            num_nodes: 3,
            train: recs(&[(0, 1)]),
            valid: recs(&[(1, 2)]),
            test: vec![],
            dynamic: false,
        };
        assert_eq!(training_graph(&split, false).unwrap().num_edges(), 1);
        assert_eq!(training_graph(&split, true).unwrap().num_edges(), 2);
        let empty = EdgeSplit {
            train: vec![],
            ..split
        };
        assert_eq!(training_graph(&empty, false).unwrap().num_edges(), 0);
    }

    #[test]
    fn split_text_round_trip() {
        let split = EdgeSplit {
            num_nodes: 6,
            train: recs(&[(0, 1), (2, 3)]),
            valid: vec![EdgeRecord { u: 3, v: 4, year: Some(2019) }],
            test: recs(&[(1, 4)]),
            dynamic: false,
        };
        let text = split.to_text();
        let back = EdgeSplit::from_text(&text).unwrap();
        assert_eq!(back, split);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn overlapping_sections_rejected_unless_dynamic() {
        let text = "#train\n0 1\n#valid\n1 0\n#test\n";
        assert!(matches!(EdgeSplit::from_text(text), Err(Error::Validation(_))));
        let dyn_text = "# dynamic\n#train\n0 1 2018\n#valid\n1 0 2019\n#test\n";
        assert!(EdgeSplit::from_text(dyn_text).unwrap().dynamic);
    }

    #[test]
    fn id_map_relabels_and_round_trips() {
        let (recs, map) = IdMap::relabel_edge_text("alice bob\nbob carol 2020\n").unwrap();
        assert_eq!(recs[1], EdgeRecord { u: 1, v: 2, year: Some(2020) });
        assert_eq!(map.get("carol"), Some(2));
        assert_eq!(IdMap::from_text(&map.to_text()).unwrap(), map);
    }
}
