//! Seeded random graph generators for tests, benchmarks and desk-scale experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Graph, Pair};

/// G(n, p) edges in lexicographic order.
pub fn erdos_renyi_edges(n: usize, p: f64, seed: u64) -> Vec<Pair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    Graph::from_edges(n, erdos_renyi_edges(n, p, seed))
}

/// Preferential attachment: each new node links to `m` distinct earlier nodes
/// chosen with probability proportional to `degree + offset`. Starts from a
/// clique on `m + 1` nodes, so the mean degree approaches `2m`.
///
/// `offset = 0` is the classic linear model (degree exponent 3). Negative
/// offsets, down to `-m` exclusive, give heavier tails (exponent `3 + offset / m`);
/// positive offsets give lighter ones.
pub fn preferential_attachment_edges(n: usize, m: usize, offset: f64, seed: u64) -> Vec<Pair> {
    assert!(offset > -(m as f64), "offset must exceed -m");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    // Each endpoint appears once per incident edge: sampling from it is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::new();
    let core = (m + 1).min(n);
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            endpoints.extend([u, v]);
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    for u in core..n {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        let uniform_weight = offset.max(0.0) * u as f64;
        while targets.len() < m.min(u) {
            let t = if endpoints.is_empty() || rng.random::<f64>() * (endpoints.len() as f64 + uniform_weight) >= endpoints.len() as f64 {
                rng.random_range(0..u)
            } else {
                let t = endpoints[rng.random_range(0..endpoints.len())];
                if offset < 0.0 {
                    let d = degree[t] as f64;
                    if rng.random::<f64>() >= (d + offset) / d {
                        continue;
                    }
                }
                t
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((t.min(u), t.max(u)));
            endpoints.extend([t, u]);
            degree[t] += 1;
            degree[u] += 1;
        }
    }
    edges
}

pub fn preferential_attachment(n: usize, m: usize, offset: f64, seed: u64) -> Result<Graph> {
    Graph::from_edges(n, preferential_attachment_edges(n, m, offset, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(erdos_renyi_edges(30, 0.2, 1), erdos_renyi_edges(30, 0.2, 1));
        assert_ne!(erdos_renyi_edges(30, 0.2, 1), erdos_renyi_edges(30, 0.2, 2));
        assert_eq!(
            preferential_attachment_edges(100, 2, 0.0, 3),
            preferential_attachment_edges(100, 2, 0.0, 3)
        );
    }

    #[test]
    fn preferential_attachment_mean_degree() {
        let g = preferential_attachment(2000, 2, 0.0, 0).unwrap();
        g.check_invariants().unwrap();
        let mean = 2.0 * g.num_edges() as f64 / g.num_nodes() as f64;
        assert!((mean - 4.0).abs() < 0.05, "{mean}");
        assert!(g.max_degree() > 30);
    }
}
