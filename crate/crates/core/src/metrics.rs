//! Ranking metrics: MRR, Hits@K and AUC, plus multi-seed aggregation.
//!
//! Greater scores rank higher. Ties between a positive and its negatives are
//! resolved by an explicit [`TiePolicy`], mid-rank by default.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{read_text, write_text};
use crate::heuristics::{ScoreLookup, ScoreTable};
use crate::par;
use crate::sampler::{NegativeSet, Negatives};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Average of optimistic and pessimistic.
    #[default]
    Mid,
    /// Ties count in the positive's favour.
    Optimistic,
    /// Ties count against the positive.
    Pessimistic,
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mid" => Ok(TiePolicy::Mid),
            "optimistic" => Ok(TiePolicy::Optimistic),
            "pessimistic" => Ok(TiePolicy::Pessimistic),
            _ => Err(Error::Config(format!(
                "unknown tie policy {s:?} (expected mid|optimistic|pessimistic)"
            ))),
        }
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TiePolicy::Mid => "mid",
            TiePolicy::Optimistic => "optimistic",
            TiePolicy::Pessimistic => "pessimistic",
        })
    }
}

/// Rank of a positive among its negatives (1 = best).
pub fn rank_positive(pos_score: f64, neg_scores: &[f64], tie: TiePolicy) -> Result<f64> {
    if !pos_score.is_finite() || neg_scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::Domain("scores must be finite".into()));
    }
    if neg_scores.is_empty() {
        log::warn!("positive has no negatives; rank 1");
        return Ok(1.0);
    }
    let greater = neg_scores.iter().filter(|&&s| s > pos_score).count();
    let tied = neg_scores.iter().filter(|&&s| s == pos_score).count();
    let optimistic = 1.0 + greater as f64;
    let pessimistic = optimistic + tied as f64;
    Ok(match tie {
        TiePolicy::Optimistic => optimistic,
        TiePolicy::Pessimistic => pessimistic,
        TiePolicy::Mid => 0.5 * (optimistic + pessimistic),
    })
}

pub fn mrr(ranks: &[f64]) -> Result<f64> {
    if ranks.is_empty() {
        return Err(Error::Domain("MRR of an empty rank list".into()));
    }
    Ok(ranks.iter().map(|r| 1.0 / r).sum::<f64>() / ranks.len() as f64)
}

pub fn hits_at_k(ranks: &[f64], k: usize) -> Result<f64> {
    if ranks.is_empty() {
        return Err(Error::Domain("Hits@K of an empty rank list".into()));
    }
    if k == 0 {
        return Err(Error::Domain("Hits@K needs K >= 1".into()));
    }
    let hit = ranks.iter().filter(|&&r| r <= k as f64).count();
    Ok(hit as f64 / ranks.len() as f64)
}

/// Probability that a positive outscores a negative, ties counting one half.
/// Sort-based, `O((P + N) log(P + N))`.
pub fn auc(pos_scores: &[f64], neg_scores: &[f64]) -> Result<f64> {
    if pos_scores.is_empty() || neg_scores.is_empty() {
        return Err(Error::Domain("AUC needs at least one positive and one negative".into()));
    }
    if pos_scores.iter().chain(neg_scores).any(|s| !s.is_finite()) {
        return Err(Error::Domain("scores must be finite".into()));
    }
    let mut all: Vec<(f64, bool)> = pos_scores
        .iter()
        .map(|&s| (s, true))
        .chain(neg_scores.iter().map(|&s| (s, false)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Twice the Mann-Whitney U statistic, kept integral.
    let mut twice_u: u128 = 0;
    let mut neg_below: u128 = 0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        let (mut p, mut n) = (0u128, 0u128);
        // -0.0 and 0.0 compare equal, so group on `==` rather than total order.
        while j < all.len() && all[j].0 == all[i].0 {
            if all[j].1 {
                p += 1;
            } else {
                n += 1;
            }
            j += 1;
        }
        twice_u += p * (2 * neg_below + n);
        neg_below += n;
        i = j;
    }
    Ok(twice_u as f64 / (2.0 * pos_scores.len() as f64 * neg_scores.len() as f64))
}

/// One set of metric values.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub mrr: f64,
    /// `(K, Hits@K)` sorted by K.
    pub hits: Vec<(usize, f64)>,
    pub auc: f64,
}

impl Metrics {
    pub fn hits_at(&self, k: usize) -> Option<f64> {
        self.hits.iter().find(|h| h.0 == k).map(|h| h.1)
    }

    pub fn ks(&self) -> Vec<usize> {
        self.hits.iter().map(|h| h.0).collect()
    }

    /// Computes all metrics from precomputed ranks and AUC pools.
    pub fn from_ranks(ranks: &[f64], ks: &[usize], auc_pos: &[f64], auc_neg: &[f64]) -> Result<Self> {
        let ks = normalize_ks(ks)?;
        let hits = ks
            .iter()
            .map(|&k| hits_at_k(ranks, k).map(|h| (k, h)))
            .collect::<Result<_>>()?;
        Ok(Metrics {
            mrr: mrr(ranks)?,
            hits,
            auc: auc(auc_pos, auc_neg)?,
        })
    }
}

pub fn normalize_ks(ks: &[usize]) -> Result<Vec<usize>> {
    if ks.contains(&0) {
        return Err(Error::Config("Hits@K needs K >= 1".into()));
    }
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

/// Metrics for one or more seeds with mean and sample standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub mode: String,
    pub tie_policy: TiePolicy,
    /// AUC was computed over pooled per-positive negatives, which mixes
    /// negatives that were never meant to be compared against other positives.
    pub auc_pooled: bool,
    pub per_seed: Vec<Metrics>,
    pub mean: Metrics,
    pub std: Metrics,
}

impl MetricReport {
    pub fn single(mode: impl Into<String>, tie_policy: TiePolicy, auc_pooled: bool, m: Metrics) -> Self {
        let std = Metrics {
            mrr: 0.0,
            hits: m.hits.iter().map(|&(k, _)| (k, 0.0)).collect(),
            auc: 0.0,
        };
        MetricReport {
            mode: mode.into(),
            tie_policy,
            auc_pooled,
            per_seed: vec![m.clone()],
            mean: m,
            std,
        }
    }

    /// `key = value` document in a fixed field order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let join = |xs: &mut dyn Iterator<Item = f64>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "mode = {}", self.mode);
        let _ = writeln!(s, "tie_policy = {}", self.tie_policy);
        let _ = writeln!(s, "auc_pooled = {}", self.auc_pooled);
        let _ = writeln!(s, "num_seeds = {}", self.per_seed.len());
        let _ = writeln!(s, "mrr = {}", self.mean.mrr);
        let _ = writeln!(s, "mrr_std = {}", self.std.mrr);
        for (&(k, m), &(_, sd)) in self.mean.hits.iter().zip(&self.std.hits) {
            let _ = writeln!(s, "hits@{k} = {m}");
            let _ = writeln!(s, "hits@{k}_std = {sd}");
        }
        let _ = writeln!(s, "auc = {}", self.mean.auc);
        let _ = writeln!(s, "auc_std = {}", self.std.auc);
        let _ = writeln!(s, "per_seed.mrr = {}", join(&mut self.per_seed.iter().map(|m| m.mrr)));
        for (i, &(k, _)) in self.mean.hits.iter().enumerate() {
            let _ = writeln!(
                s,
                "per_seed.hits@{k} = {}",
                join(&mut self.per_seed.iter().map(|m| m.hits[i].1))
            );
        }
        let _ = writeln!(s, "per_seed.auc = {}", join(&mut self.per_seed.iter().map(|m| m.auc)));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        let mut hit_keys: Vec<usize> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| Error::parse(i + 1, "expected `key = value`"))?;
            if let Some(kk) = k.strip_prefix("hits@").filter(|r| !r.ends_with("_std")) {
                hit_keys.push(kk.parse().map_err(|_| Error::parse(i + 1, "bad hits key"))?);
            }
            kv.insert(k.to_string(), v.to_string());
        }
        let get = |k: &str| kv.get(k).ok_or_else(|| Error::parse(0, format!("missing key {k}")));
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::parse(0, format!("bad number for {k}")))
        };
        let list = |k: &str| -> Result<Vec<f64>> {
            let v = get(k)?;
            if v.is_empty() {
                return Ok(Vec::new());
            }
            v.split(',')
                .map(|x| x.parse().map_err(|_| Error::parse(0, format!("bad list for {k}"))))
                .collect()
        };
        let n: usize = get("num_seeds")?
            .parse()
            .map_err(|_| Error::parse(0, "bad num_seeds"))?;
        let seed_mrr = list("per_seed.mrr")?;
        let seed_auc = list("per_seed.auc")?;
        let seed_hits = hit_keys
            .iter()
            .map(|k| list(&format!("per_seed.hits@{k}")))
            .collect::<Result<Vec<_>>>()?;
        if seed_mrr.len() != n || seed_auc.len() != n || seed_hits.iter().any(|h| h.len() != n) {
            return Err(Error::parse(0, "per-seed arrays disagree with num_seeds"));
        }
        let per_seed = (0..n)
            .map(|i| Metrics {
                mrr: seed_mrr[i],
                hits: hit_keys.iter().zip(&seed_hits).map(|(&k, h)| (k, h[i])).collect(),
                auc: seed_auc[i],
            })
            .collect();
        Ok(MetricReport {
            mode: get("mode")?.clone(),
            tie_policy: get("tie_policy")?.parse()?,
            auc_pooled: get("auc_pooled")? == "true",
            per_seed,
            mean: Metrics {
                mrr: num("mrr")?,
                hits: hit_keys
                    .iter()
                    .map(|&k| num(&format!("hits@{k}")).map(|v| (k, v)))
                    .collect::<Result<_>>()?,
                auc: num("auc")?,
            },
            std: Metrics {
                mrr: num("mrr_std")?,
                hits: hit_keys
                    .iter()
                    .map(|&k| num(&format!("hits@{k}_std")).map(|v| (k, v)))
                    .collect::<Result<_>>()?,
                auc: num("auc_std")?,
            },
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_text())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&read_text(path)?)
    }
}

/// Ranks every positive of `negs` against its negatives using `scores`.
pub fn evaluate_lookup(negs: &NegativeSet, scores: &ScoreLookup, ks: &[usize], tie: TiePolicy) -> Result<MetricReport> {
    if negs.positives.is_empty() {
        return Err(Error::Domain("negative set has no positives".into()));
    }
    let pos_scores: Vec<f64> = negs
        .positives
        .iter()
        .map(|&p| scores.require(p))
        .collect::<Result<_>>()?;
    let (metrics, pooled) = match &negs.negatives {
        Negatives::Shared(shared) => {
            let neg_scores: Vec<f64> = shared.iter().map(|&p| scores.require(p)).collect::<Result<_>>()?;
            let ranks = par::try_map(&pos_scores, |&s| rank_positive(s, &neg_scores, tie))?;
            (Metrics::from_ranks(&ranks, ks, &pos_scores, &neg_scores)?, false)
        }
        Negatives::PerPositive(lists) => {
            let per: Vec<Vec<f64>> = par::try_map(lists, |l| l.iter().map(|&p| scores.require(p)).collect())?;
            let idx: Vec<usize> = (0..pos_scores.len()).collect();
            let ranks = par::try_map(&idx, |&i| rank_positive(pos_scores[i], &per[i], tie))?;
            let pooled: Vec<f64> = per.concat();
            if pooled.is_empty() {
                return Err(Error::Domain("negative set has no negatives".into()));
            }
            (Metrics::from_ranks(&ranks, ks, &pos_scores, &pooled)?, true)
        }
    };
    Ok(MetricReport::single(negs.mode.to_string(), tie, pooled, metrics))
}

/// Evaluates aligned positive and negative score tables against a negative set.
pub fn evaluate(
    negs: &NegativeSet,
    scores_pos: &ScoreTable,
    scores_neg: &ScoreTable,
    ks: &[usize],
    tie: TiePolicy,
) -> Result<MetricReport> {
    let mut lookup = scores_pos.lookup()?;
    lookup.merge(scores_neg.lookup()?)?;
    evaluate_lookup(negs, &lookup, ks, tie)
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.iter().all(|&x| x == xs[0]) {
        return (xs[0], 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Pools the per-seed entries of all reports; mean and sample std (n - 1).
pub fn aggregate_seeds(reports: &[MetricReport]) -> Result<MetricReport> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Config("no reports to aggregate".into()))?;
    let ks = first.mean.ks();
    if reports.iter().any(|r| r.mean.ks() != ks) {
        return Err(Error::Config("reports use different Hits@K lists".into()));
    }
    let per_seed: Vec<Metrics> = reports.iter().flat_map(|r| r.per_seed.iter().cloned()).collect();
    let col = |f: &dyn Fn(&Metrics) -> f64| mean_std(&per_seed.iter().map(f).collect::<Vec<_>>());
    let (mrr_m, mrr_s) = col(&|m| m.mrr);
    let (auc_m, auc_s) = col(&|m| m.auc);
    let (mut hits_m, mut hits_s) = (Vec::new(), Vec::new());
    for (i, &k) in ks.iter().enumerate() {
        let (m, s) = col(&|x| x.hits[i].1);
        hits_m.push((k, m));
        hits_s.push((k, s));
    }
    Ok(MetricReport {
        mode: first.mode.clone(),
        tie_policy: first.tie_policy,
        auc_pooled: reports.iter().any(|r| r.auc_pooled),
        per_seed,
        mean: Metrics {
            mrr: mrr_m,
            hits: hits_m,
            auc: auc_m,
        },
        std: Metrics {
            mrr: mrr_s,
            hits: hits_s,
            auc: auc_s,
        },
    })
}
