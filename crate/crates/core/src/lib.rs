//! Link-prediction evaluation toolkit.
//!
//! The crate bundles four layers that build on each other:
//!
//! - [`graph`]: immutable CSR graphs, node features, edge splits and their file formats.
//! - [`heuristics`]: pair scorers (CN, AA, RA, shortest path, Katz, personalized
//!   PageRank, feature cosine) and the [`heuristics::ScoreTable`] exchange format.
//! - [`candidates`] and [`sampler`]: filtered corruption sets and evaluation
//!   negatives, either heuristic-ranked hard negatives or random ones.
//! - [`metrics`]: MRR, Hits@K and AUC with explicit tie handling.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default) and fall back to plain iterators otherwise. Output never
//! depends on the number of worker threads.

pub mod candidates;
pub mod diagnostics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod metrics;
pub mod par;
pub mod sampler;

pub use error::{Error, Result};
pub use graph::{EdgeSplit, FeatureMatrix, Graph, Pair};
pub use heuristics::{HeuristicKind, ScoreTable};
pub use metrics::{MetricReport, TiePolicy};
pub use sampler::{NegativeMode, NegativeSet};
