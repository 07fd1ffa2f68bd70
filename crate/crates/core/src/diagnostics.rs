//! Common-neighbor distributions of positive versus negative evaluation pairs.

use std::fmt::Write as _;

use crate::error::Result;
use crate::graph::{Graph, Pair};
use crate::heuristics::cn;
use crate::par;
use crate::sampler::NegativeSet;

/// Common-neighbor count of every pair.
pub fn cn_counts(g: &Graph, pairs: &[Pair]) -> Result<Vec<usize>> {
    par::try_map(pairs, |&(u, v)| cn(g, u, v).map(|c| c as usize))
}

/// Fraction of pairs with no common neighbor; 0 for an empty list.
pub fn zero_cn_fraction(g: &Graph, pairs: &[Pair]) -> Result<f64> {
    if pairs.is_empty() {
        return Ok(0.0);
    }
    let counts = cn_counts(g, pairs)?;
    Ok(counts.iter().filter(|&&c| c == 0).count() as f64 / pairs.len() as f64)
}

/// Inclusive CN range of one histogram row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnBin {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CnHistogram {
    pub bins: Vec<CnBin>,
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

fn bins_for(max_cn: usize, log_bins: bool) -> Vec<CnBin> {
    if !log_bins {
        return (0..=max_cn).map(|c| CnBin { lo: c, hi: c }).collect();
    }
    let mut bins = vec![CnBin { lo: 0, hi: 0 }];
    let mut lo = 1;
    while lo <= max_cn {
        bins.push(CnBin { lo, hi: 2 * lo - 1 });
        lo *= 2;
    }
    bins
}

fn fractions(counts: &[usize], bins: &[CnBin]) -> Vec<f64> {
    let mut out = vec![0.0; bins.len()];
    if counts.is_empty() {
        return out;
    }
    for &c in counts {
        if let Some(i) = bins.iter().position(|b| b.lo <= c && c <= b.hi) {
            out[i] += 1.0;
        }
    }
    out.iter_mut().for_each(|x| *x /= counts.len() as f64);
    out
}

/// CN histogram of the positives and all negatives in `negs`.
/// Log bins are `0`, `1`, `2-3`, `4-7`, ...
pub fn cn_distribution(g: &Graph, negs: &NegativeSet, log_bins: bool) -> Result<CnHistogram> {
    let (pos, neg) = negs.all_pairs();
    let pc = cn_counts(g, &pos)?;
    let nc = cn_counts(g, &neg)?;
    let max_cn = pc.iter().chain(&nc).copied().max().unwrap_or(0);
    let bins = bins_for(max_cn, log_bins);
    Ok(CnHistogram {
        positive: fractions(&pc, &bins),
        negative: fractions(&nc, &bins),
        bins,
    })
}

impl CnHistogram {
    /// `cn_count,positive_fraction,negative_fraction`; log bins print as `lo-hi`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("cn_count,positive_fraction,negative_fraction\n");
        for ((b, p), n) in self.bins.iter().zip(&self.positive).zip(&self.negative) {
            if b.lo == b.hi {
                let _ = writeln!(s, "{},{p},{n}", b.lo);
            } else {
                let _ = writeln!(s, "{}-{},{p},{n}", b.lo, b.hi);
            }
        }
        s
    }
}
