use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heart_core::candidates::{FilterIndex, FilterPolicy};
use heart_core::diagnostics::cn_distribution;
use heart_core::graph::{
    make_split, read_edge_records, training_graph, unordered, EdgeRecord, EdgeSplit, FeatureMatrix, IdMap, Stage,
};
use heart_core::heuristics::{
    score_pairs, HeuristicKind, PprDirection, ScoreTable, DEFAULT_KATZ_BETA, DEFAULT_KATZ_MAX_LEN, DEFAULT_PPR_ALPHA,
    DEFAULT_PPR_EPSILON, DEFAULT_SP_CUTOFF,
};
use heart_core::metrics::{aggregate_seeds, evaluate, TiePolicy};
use heart_core::sampler::{
    generate_global_random_for, generate_heart_for, generate_per_positive_random_for, subsample_positives, HeartConfig,
    NegativeSet,
};
use heart_core::{graph, par, Error, Result};

#[derive(Parser)]
#[command(name = "heart", version, about = "Link-prediction evaluation: splits, negatives, heuristic scores, metrics")]
struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true, env = "HEART_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shuffle an edge list into train/valid/test sections.
    Split(SplitArgs),
    /// Generate evaluation negatives for the valid or test positives.
    GenNeg(GenNegArgs),
    /// Score every positive and negative pair with one heuristic.
    Score(ScoreArgs),
    /// Compute MRR, Hits@K and AUC from score files, aggregated over seeds.
    Evaluate(EvaluateArgs),
    /// Common-neighbor histogram of positives versus negatives.
    CnDist(CnDistArgs),
}

#[derive(Args)]
struct SplitArgs {
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    num_nodes: Option<usize>,
    #[arg(long, num_args = 3, value_names = ["TRAIN", "VALID", "TEST"], default_values_t = [0.85, 0.05, 0.10])]
    ratios: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Keep repeated pairs (timestamped dynamic graphs).
    #[arg(long)]
    dynamic: bool,
    /// Treat node ids as arbitrary labels and write the label-to-id map here.
    #[arg(long)]
    relabel_map: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Valid,
    Test,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Self {
        match s {
            StageArg::Valid => Stage::Valid,
            StageArg::Test => Stage::Test,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Heart,
    Global,
    PerPositive,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    split: PathBuf,
    #[arg(long)]
    features: Option<PathBuf>,
    /// Add validation edges to the graph heuristics run on.
    #[arg(long)]
    include_valid: bool,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = DEFAULT_KATZ_BETA)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_KATZ_MAX_LEN)]
    max_len: usize,
    #[arg(long, default_value_t = DEFAULT_SP_CUTOFF)]
    cutoff: usize,
    #[arg(long, default_value_t = DEFAULT_PPR_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = DEFAULT_PPR_EPSILON)]
    epsilon: f64,
    /// forward | reverse | mean
    #[arg(long, default_value = "forward")]
    ppr_direction: String,
}

impl ParamArgs {
    fn apply(&self, name: &str) -> Result<HeuristicKind> {
        Ok(match name.parse::<HeuristicKind>()? {
            HeuristicKind::Katz { .. } => HeuristicKind::Katz {
                beta: self.beta,
                max_len: self.max_len,
            },
            HeuristicKind::Ppr { .. } => HeuristicKind::Ppr {
                alpha: self.alpha,
                epsilon: self.epsilon,
                direction: self.ppr_direction.parse::<PprDirection>()?,
            },
            HeuristicKind::ShortestPath { .. } => HeuristicKind::ShortestPath { cutoff: self.cutoff },
            other => other,
        })
    }
}

#[derive(Args)]
struct GenNegArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "test")]
    stage: StageArg,
    /// Negatives per positive (heart, per-positive).
    #[arg(long, default_value_t = 500)]
    k: usize,
    /// Shared list size for global mode: a number or `auto` (= number of positives).
    #[arg(long, default_value = "auto")]
    count: String,
    /// Comma-separated heuristics for heart mode, or `auto` for RA+PPR (+cos with features).
    #[arg(long)]
    heuristics: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    /// Do not filter train/valid positives (dynamic graphs).
    #[arg(long)]
    dynamic: bool,
    /// Uniformly subsample this many positives first.
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    negatives: PathBuf,
    #[arg(long)]
    heuristic: String,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    out_pos: PathBuf,
    #[arg(long)]
    out_neg: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    negatives: PathBuf,
    /// Positive score file; repeat once per seed, paired with --neg-scores.
    #[arg(long)]
    pos_scores: Vec<PathBuf>,
    #[arg(long)]
    neg_scores: Vec<PathBuf>,
    /// Score file covering positives and negatives together; repeat once per seed.
    #[arg(long)]
    scores: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 3, 10, 100])]
    ks: Vec<usize>,
    /// mid | optimistic | pessimistic
    #[arg(long, default_value = "mid")]
    tie: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CnDistArgs {
    #[arg(long)]
    split: PathBuf,
    #[arg(long)]
    negatives: PathBuf,
    #[arg(long)]
    include_valid: bool,
    #[arg(long)]
    log_bins: bool,
    #[arg(long)]
    out: PathBuf,
}

fn load_graph_inputs(args: &GraphArgs) -> Result<(EdgeSplit, graph::Graph, Option<FeatureMatrix>)> {
    let split = EdgeSplit::load(&args.split)?;
    let g = training_graph(&split, args.include_valid)?;
    let x = args.features.as_deref().map(graph::load_features).transpose()?;
    if let Some(x) = &x {
        x.check_matches(&g)?;
    }
    Ok((split, g, x))
}

fn cmd_split(args: &SplitArgs) -> Result<()> {
    let (records, map) = match &args.relabel_map {
        Some(_) => {
            let (r, m) = IdMap::relabel_edge_text(&std::fs::read_to_string(&args.edges).map_err(|e| Error::Io {
                path: args.edges.clone(),
                source: e,
            })?)?;
            (r, Some(m))
        }
        None => (read_edge_records(&args.edges)?, None),
    };
    let num_nodes = match (args.num_nodes, &map) {
        (Some(n), _) => n,
        (None, Some(m)) => m.len(),
        (None, None) => records.iter().map(|r| r.u.max(r.v) + 1).max().unwrap_or(0),
    };
    let mut seen = HashSet::new();
    let (mut loops, mut dups) = (0usize, 0usize);
    let edges: Vec<EdgeRecord> = records
        .into_iter()
        .filter(|r| {
            if r.u == r.v {
                loops += 1;
                return false;
            }
            if !args.dynamic && !seen.insert(unordered(r.pair())) {
                dups += 1;
                return false;
            }
            true
        })
        .collect();
    if loops + dups > 0 {
        log::warn!("dropped {loops} self-loops and {dups} duplicate edges");
    }
    let ratios = [args.ratios[0], args.ratios[1], args.ratios[2]];
    let mut split = make_split(num_nodes, &edges, ratios, args.seed)?;
    split.dynamic = args.dynamic;
    split.save(&args.out)?;
    if let (Some(path), Some(map)) = (&args.relabel_map, &map) {
        std::fs::write(path, map.to_text()).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    Ok(())
}

fn cmd_gen_neg(args: &GenNegArgs) -> Result<()> {
    let (split, g, x) = load_graph_inputs(&args.graph)?;
    let stage: Stage = args.stage.into();
    let policy = if args.dynamic || split.dynamic {
        FilterPolicy::dynamic()
    } else {
        FilterPolicy::standard()
    };
    let index = FilterIndex::from_split(&split);
    let mut positives = split.positives(stage);
    if let Some(n) = args.subsample {
        positives = subsample_positives(&positives, n, args.seed);
    }
    let negs = match args.mode {
        ModeArg::Heart => {
            let list = args
                .heuristics
                .as_deref()
                .ok_or_else(|| Error::Config("heart mode needs --heuristics (or --heuristics auto)".into()))?;
            let config = if list.trim() == "auto" {
                HeartConfig::default_for(x.is_some())
            } else {
                HeartConfig {
                    heuristics: list
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| args.params.apply(s.trim()))
                        .collect::<Result<_>>()?,
                }
            };
            generate_heart_for(&g, x.as_ref(), &index, &positives, stage, args.k, &config, policy, args.seed)?
        }
        ModeArg::Global => {
            let count = match args.count.as_str() {
                "auto" => positives.len(),
                n => n
                    .parse()
                    .map_err(|_| Error::Config(format!("--count must be a number or `auto`, got {n:?}")))?,
            };
            generate_global_random_for(&index, &positives, stage, count, policy, args.seed)?
        }
        ModeArg::PerPositive => generate_per_positive_random_for(&index, &positives, stage, args.k, policy, args.seed)?,
    };
    negs.save(&args.out)
}

fn cmd_score(args: &ScoreArgs) -> Result<()> {
    let kind = args.params.apply(&args.heuristic)?;
    let (_, g, x) = load_graph_inputs(&args.graph)?;
    if kind.needs_features() && x.is_none() {
        return Err(Error::Config("heuristic cos requires --features".into()));
    }
    let negs = NegativeSet::load(&args.negatives)?;
    let (pos, neg) = negs.all_pairs();
    score_pairs(&g, x.as_ref(), kind, &pos)?.save(&args.out_pos)?;
    score_pairs(&g, x.as_ref(), kind, &neg)?.save(&args.out_neg)
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<()> {
    let tie: TiePolicy = args.tie.parse()?;
    if args.pos_scores.len() != args.neg_scores.len() {
        return Err(Error::Config("--pos-scores and --neg-scores must be given the same number of times".into()));
    }
    if args.pos_scores.is_empty() && args.scores.is_empty() {
        return Err(Error::Config("no score files given".into()));
    }
    let negs = NegativeSet::load(&args.negatives)?;
    let mut reports = Vec::new();
    for (p, n) in args.pos_scores.iter().zip(&args.neg_scores) {
        reports.push(evaluate(&negs, &ScoreTable::load(p)?, &ScoreTable::load(n)?, &args.ks, tie)?);
    }
    let empty = ScoreTable::new("", vec![], vec![])?;
    for s in &args.scores {
        reports.push(evaluate(&negs, &ScoreTable::load(s)?, &empty, &args.ks, tie)?);
    }
    let report = aggregate_seeds(&reports)?;
    report.save(&args.out)
}

fn cmd_cn_dist(args: &CnDistArgs) -> Result<()> {
    let split = EdgeSplit::load(&args.split)?;
    let g = training_graph(&split, args.include_valid)?;
    let negs = NegativeSet::load(&args.negatives)?;
    let hist = cn_distribution(&g, &negs, args.log_bins)?;
    write(&args.out, &hist.to_csv())
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = par::with_threads(cli.threads, || match &cli.command {
        Command::Split(a) => cmd_split(a),
        Command::GenNeg(a) => cmd_gen_neg(a),
        Command::Score(a) => cmd_score(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::CnDist(a) => cmd_cn_dist(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

