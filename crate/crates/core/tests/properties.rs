use proptest::prelude::*;

use heart_core::candidates::FilterPolicy;
use heart_core::graph::{make_split, unordered, EdgeRecord, Graph, Pair, Stage};
use heart_core::heuristics::{self as hs, ScoreTable};
use heart_core::metrics::{rank_positive, TiePolicy};
use heart_core::sampler::{generate_per_positive_random, NegativeMode, NegativeSet, Negatives};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..80).prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_heuristics_are_symmetric_and_bounded(g in graph_strategy()) {
        let n = g.num_nodes();
        for u in 0..n {
            for v in u + 1..n {
                for f in [hs::cn, hs::aa, hs::ra] {
                    let a = f(&g, u, v).unwrap();
                    prop_assert_eq!(a, f(&g, v, u).unwrap());
                    prop_assert!(a >= 0.0);
                }
                let sp = hs::shortest_path_score(&g, u, v, 6).unwrap();
                prop_assert_eq!(sp, hs::shortest_path_score(&g, v, u, 6).unwrap());
                prop_assert!((0.0..=1.0).contains(&sp));
                let k = hs::katz(&g, u, v, 0.05, 4).unwrap();
                prop_assert!((k - hs::katz(&g, v, u, 0.05, 4).unwrap()).abs() <= 1e-12 * k.max(1.0));
            }
        }
    }

    #[test]
    fn katz_grows_with_beta_and_length(g in graph_strategy(), b in 0.01f64..0.2) {
        let n = g.num_nodes();
        for u in 0..n {
            let base = hs::katz_from(&g, u, b, 3).unwrap();
            let more_beta = hs::katz_from(&g, u, b * 1.5, 3).unwrap();
            let longer = hs::katz_from(&g, u, b, 4).unwrap();
            for v in 0..n {
                prop_assert!(more_beta[v] >= base[v]);
                prop_assert!(longer[v] >= base[v]);
            }
        }
    }

    #[test]
    fn ppr_mass_is_a_subprobability(g in graph_strategy(), alpha in 0.05f64..0.9) {
        for s in 0..g.num_nodes() {
            let p = hs::ppr(&g, s, alpha, 1e-4).unwrap();
            prop_assert!(p.estimates.iter().all(|&(_, x)| x > 0.0));
            let total = p.total_mass() + p.residuals.iter().map(|r| r.1).sum::<f64>();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn split_is_a_partition(
        edges in prop::collection::btree_set((0usize..50, 0usize..50).prop_filter("no self-loops", |e| e.0 < e.1), 1..200),
        seed in any::<u64>(),
    ) {
        let edges: Vec<Pair> = edges.into_iter().collect();
        let recs: Vec<EdgeRecord> = edges.iter().map(|&(u, v)| EdgeRecord::new(u, v)).collect();
        let split = make_split(50, &recs, [0.8, 0.1, 0.1], seed).unwrap();
        let mut got: Vec<Pair> = split.train.iter().chain(&split.valid).chain(&split.test).map(|r| r.pair()).collect();
        let mut want = edges.clone();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
        prop_assert_eq!(split.test.len(), (edges.len() as f64 * 0.1 + 1e-9).floor() as usize);
    }

    #[test]
    fn random_negatives_round_trip_and_respect_filter(
        edges in prop::collection::vec((0usize..40, 0usize..40), 10..60),
        seed in any::<u64>(),
    ) {
        let mut seen = std::collections::HashSet::new();
        let recs: Vec<EdgeRecord> = edges
            .iter()
            .filter(|&&(u, v)| u != v && seen.insert(unordered((u, v))))
            .map(|&(u, v)| EdgeRecord::new(u, v))
            .collect();
        prop_assume!(recs.len() >= 10);
        let split = make_split(40, &recs, [0.7, 0.1, 0.2], seed).unwrap();
        let negs = generate_per_positive_random(&split, Stage::Test, 8, FilterPolicy::standard(), seed).unwrap();
        prop_assert_eq!(negs.mode, NegativeMode::PerPositiveRandom);
        let train: std::collections::HashSet<Pair> = split.train.iter().map(|r| unordered(r.pair())).collect();
        for i in 0..negs.positives.len() {
            for &p in negs.negatives_for(i) {
                prop_assert!(p.0 != p.1 && !train.contains(&unordered(p)));
            }
        }
        prop_assert_eq!(NegativeSet::from_text(&negs.to_text()).unwrap(), negs);
    }

    #[test]
    fn shared_negative_sets_round_trip(
        pos in prop::collection::vec((0usize..1000, 0usize..1000), 1..20),
        shared in prop::collection::vec((0usize..1000, 0usize..1000), 1..50),
        k in 1usize..100,
        seed in any::<u64>(),
    ) {
        let negs = NegativeSet { mode: NegativeMode::Global, k, seed, positives: pos, negatives: Negatives::Shared(shared) };
        prop_assert_eq!(NegativeSet::from_text(&negs.to_text()).unwrap(), negs);
    }

    #[test]
    fn score_tables_round_trip_exactly(scores in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..50)) {
        let pairs: Vec<Pair> = (0..scores.len()).map(|i| (i, i + 1)).collect();
        let t = ScoreTable::new("ra", pairs, scores).unwrap();
        prop_assert_eq!(ScoreTable::from_tsv(&t.to_tsv()).unwrap(), t);
    }

    #[test]
    fn raising_the_positive_never_worsens_its_rank(
        pos in 0u8..10,
        bump in 0u8..5,
        negs in prop::collection::vec(0u8..10, 1..30),
    ) {
        let neg: Vec<f64> = negs.iter().map(|&x| x as f64).collect();
        for tie in [TiePolicy::Mid, TiePolicy::Optimistic, TiePolicy::Pessimistic] {
            let before = rank_positive(pos as f64, &neg, tie).unwrap();
            let after = rank_positive((pos + bump) as f64, &neg, tie).unwrap();
            prop_assert!(after <= before);
            prop_assert!(before >= 1.0 && before <= neg.len() as f64 + 1.0);
        }
        let opt = rank_positive(pos as f64, &neg, TiePolicy::Optimistic).unwrap();
        let mid = rank_positive(pos as f64, &neg, TiePolicy::Mid).unwrap();
        let pes = rank_positive(pos as f64, &neg, TiePolicy::Pessimistic).unwrap();
        prop_assert!(opt <= mid && mid <= pes);
    }
}
