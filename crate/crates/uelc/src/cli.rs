//! Command-line front end: ingestion, detection, generation, evaluation, and
//! plot-data export, all deterministic for a fixed RNG seed.
//!
//! Every command writes a run manifest next to its outputs. Exit codes:
//! 0 success, 1 usage error, 2 input error, 3 numerical failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{
    cover_statistics, cumulative_ge, fvcc, generate_bkn, jaccard_overlap, nmi,
    sweep_expected_degree, BknConfig, GroundTruthCover,
};
use crate::graph::{load_edge_list, write_edge_list, EdgeListLoad, GraphError, NodeId};
use crate::linkdyn::{build_transition, propagate, unit_distribution};
use crate::nodecomm::uelc_nodes;
use crate::partition::{
    node_cover_from_links, uelc, DetectorConfig, LinkPartition, NodeCover, TreeNode,
};
use crate::spectral::{estimate_lambda2, MarkovGenerator, SpectralError, StepMode, StepPolicy};

/// Top-level argument grammar.
#[derive(Debug, Parser)]
#[command(
    name = "uelc",
    version,
    about = "Link community detection through link-node-link random walk dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect link communities and the induced overlapping node cover.
    DetectLinks(DetectLinksArgs),
    /// Detect non-overlapping node communities.
    DetectNodes(DetectArgs),
    /// Generate a planted-overlap benchmark instance.
    GenBkn(GenBknArgs),
    /// Score predictions against ground truth (FVCC/Jaccard or NMI).
    Eval(EvalArgs),
    /// Estimate lambda_2 of the weighted line graph and the step bound.
    Spectral(SpectralArgs),
    /// Dump an l-step transition probability vector as CSV.
    DumpAlpha(DumpAlphaArgs),
    /// Run the planted-overlap sweep over expected degrees.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StepModeArg {
    Fixed,
    Spectral,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct DetectorFlags {
    /// How the walk length is chosen per subnetwork.
    #[arg(long, value_enum, default_value = "fixed")]
    pub step_mode: StepModeArg,
    /// Upper bound on the walk length.
    #[arg(long, default_value_t = 100)]
    pub step_cap: usize,
    /// Seed edges tried per bipartition (best split by density wins).
    #[arg(long, default_value_t = 1)]
    pub seed_trials: usize,
    /// Master RNG seed; identical seeds reproduce outputs byte for byte.
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    /// Subnetworks with fewer edges are never split.
    #[arg(long, default_value_t = 2)]
    pub min_edges: usize,
}

impl DetectorFlags {
    pub fn to_config(&self) -> Result<DetectorConfig, CliError> {
        if self.seed_trials == 0 {
            return Err(CliError::Usage("--seed-trials must be at least 1".into()));
        }
        if self.step_cap == 0 {
            return Err(CliError::Usage("--step-cap must be at least 1".into()));
        }
        let mode = match self.step_mode {
            StepModeArg::Fixed => StepMode::Fixed,
            StepModeArg::Spectral => StepMode::Spectral,
        };
        Ok(DetectorConfig {
            step_policy: StepPolicy {
                mode,
                cap: self.step_cap,
                ..StepPolicy::default()
            },
            rng_seed: self.rng_seed,
            seed_trials: self.seed_trials,
            min_edges_leaf: self.min_edges,
        })
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Edge-list file: one `<label_u> <label_v>` per line, `#` comments.
    pub edges: PathBuf,
    #[command(flatten)]
    pub detector: DetectorFlags,
    /// Directory for output files (created if missing).
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct DetectLinksArgs {
    #[command(flatten)]
    pub base: DetectArgs,
    /// Also write the four cover-statistic cumulative distributions as CSV.
    #[arg(long)]
    pub cover_stats: bool,
}

#[derive(Debug, Args)]
pub struct GenBknArgs {
    /// Nodes in the first community only.
    #[arg(long)]
    pub x: usize,
    /// Nodes in the second community only.
    #[arg(long)]
    pub y: usize,
    /// Nodes in both communities.
    #[arg(long)]
    pub z: usize,
    /// Expected degree of every node.
    #[arg(long)]
    pub k: f64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EvalMode {
    /// Overlapping covers: FVCC and Jaccard overlap index.
    Cover,
    /// Non-overlapping partitions: NMI.
    Partition,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub mode: EvalMode,
    /// Predicted cover/partition file.
    #[arg(long)]
    pub pred: PathBuf,
    /// Ground-truth cover/partition file.
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    pub edges: PathBuf,
    /// Eigensolver tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 600)]
    pub max_iter: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct DumpAlphaArgs {
    pub edges: PathBuf,
    /// Seed edge as `<label_u>,<label_v>`.
    #[arg(long)]
    pub seed_edge: String,
    /// Number of walk steps.
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub y: usize,
    #[arg(long)]
    pub z: usize,
    /// Comma-separated expected degrees, e.g. `4,8,12`.
    #[arg(long)]
    pub k_values: String,
    /// Instances per degree value.
    #[arg(long, default_value_t = 20)]
    pub instances: usize,
    #[command(flatten)]
    pub detector: DetectorFlags,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

/// CLI failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Full config echo written into every manifest and summary.
#[derive(Debug, Serialize)]
struct ConfigEcho {
    step_mode: String,
    step_cap: usize,
    seed_trials: usize,
    rng_seed: u64,
    min_edges: usize,
}

impl ConfigEcho {
    fn from_config(cfg: &DetectorConfig) -> Self {
        ConfigEcho {
            step_mode: match cfg.step_policy.mode {
                StepMode::Fixed => "fixed".into(),
                StepMode::Spectral => "spectral".into(),
            },
            step_cap: cfg.step_policy.cap,
            seed_trials: cfg.seed_trials,
            rng_seed: cfg.rng_seed,
            min_edges: cfg.min_edges_leaf,
        }
    }
}

/// Sidecar metadata written alongside every command's outputs. Everything in
/// it except `wall_time_ms` is reproducible byte for byte.
#[derive(Debug, Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<ConfigEcho>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    parameters: BTreeMap<String, String>,
    tool_version: String,
    wall_time_ms: u128,
}

fn write_manifest(
    out_dir: &Path,
    command: &str,
    inputs: &[&Path],
    config: Option<ConfigEcho>,
    parameters: BTreeMap<String, String>,
    started: Instant,
) -> Result<(), CliError> {
    let manifest = RunManifest {
        command: command.to_string(),
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        config,
        parameters,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: started.elapsed().as_millis(),
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(out_dir.join("manifest.json"), json + "\n")?;
    Ok(())
}

fn load_graph_file(path: &Path) -> Result<EdgeListLoad, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    load_edge_list(BufReader::new(file)).map_err(CliError::from)
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    Ok(())
}

/// Runs a parsed command; the binary maps the result onto exit codes.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::DetectLinks(args) => cmd_detect_links(args),
        Command::DetectNodes(args) => cmd_detect_nodes(args),
        Command::GenBkn(args) => cmd_gen_bkn(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Spectral(args) => cmd_spectral(args),
        Command::DumpAlpha(args) => cmd_dump_alpha(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

#[derive(Serialize)]
struct CommunitySummary {
    id: usize,
    edge_count: usize,
    node_count: usize,
    density: f64,
}

#[derive(Serialize)]
struct LinkSummary<'a> {
    node_count: usize,
    edge_count: usize,
    duplicates_collapsed: usize,
    community_count: usize,
    communities: Vec<CommunitySummary>,
    overlap_nodes: Vec<String>,
    recursion_tree: &'a [TreeNode],
    config: ConfigEcho,
}

fn cmd_detect_links(all_args: DetectLinksArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let args = all_args.base;
    let cfg = args.detector.to_config()?;
    let loaded = load_graph_file(&args.edges)?;
    ensure_out_dir(&args.out_dir)?;

    let p = uelc(&loaded.graph, &cfg);
    let cover = node_cover_from_links(&loaded.graph, &p);
    if all_args.cover_stats {
        write_cover_statistics(&args.out_dir, &cover, &p)?;
    }

    let mut partition_line = String::new();
    for (e, &label) in p.labels().iter().enumerate() {
        let (u, v) = loaded.graph.endpoints(e);
        partition_line.push_str(&format!(
            "{} {} {}\n",
            loaded.labels.label(u),
            loaded.labels.label(v),
            label
        ));
    }
    fs::write(args.out_dir.join("link_partition.txt"), partition_line)?;
    fs::write(
        args.out_dir.join("node_cover.txt"),
        render_cover(&cover, &loaded),
    )?;

    let overlap_nodes: Vec<String> = cover
        .overlap_nodes()
        .into_iter()
        .map(|i| loaded.labels.label(i).to_string())
        .collect();
    let summary = LinkSummary {
        node_count: loaded.graph.node_count(),
        edge_count: loaded.graph.edge_count(),
        duplicates_collapsed: loaded.duplicates_collapsed,
        community_count: p.community_count(),
        communities: p
            .community_stats()
            .iter()
            .enumerate()
            .map(|(id, s)| CommunitySummary {
                id,
                edge_count: s.edge_count,
                node_count: s.node_count,
                density: s.density,
            })
            .collect(),
        overlap_nodes,
        recursion_tree: p.tree(),
        config: ConfigEcho::from_config(&cfg),
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    fs::write(args.out_dir.join("summary.json"), format!("{json}\n"))?;

    match args.format {
        FormatArg::Json => println!("{json}"),
        FormatArg::Text => {
            println!(
                "{} nodes, {} edges -> {} link communities",
                summary.node_count, summary.edge_count, summary.community_count
            );
            for c in &summary.communities {
                println!(
                    "  community {}: {} edges, {} nodes, density {:.4}",
                    c.id, c.edge_count, c.node_count, c.density
                );
            }
            println!("overlap nodes: {}", summary.overlap_nodes.join(" "));
        }
    }

    write_manifest(
        &args.out_dir,
        "detect-links",
        &[&args.edges],
        Some(ConfigEcho::from_config(&cfg)),
        BTreeMap::new(),
        started,
    )
}

fn render_cover(cover: &NodeCover, loaded: &EdgeListLoad) -> String {
    let mut out = String::new();
    for i in 0..cover.node_count() {
        let ids: Vec<String> = cover.memberships(i).iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{} {}\n", loaded.labels.label(i), ids.join(",")));
    }
    out
}

#[derive(Serialize)]
struct NodeSummary<'a> {
    node_count: usize,
    edge_count: usize,
    community_count: usize,
    community_sizes: Vec<usize>,
    recursion_tree: &'a [TreeNode],
    config: ConfigEcho,
}

fn cmd_detect_nodes(args: DetectArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let cfg = args.detector.to_config()?;
    let loaded = load_graph_file(&args.edges)?;
    ensure_out_dir(&args.out_dir)?;

    let p = uelc_nodes(&loaded.graph, &cfg);
    let mut lines = String::new();
    for (i, &label) in p.labels().iter().enumerate() {
        lines.push_str(&format!("{} {}\n", loaded.labels.label(i), label));
    }
    fs::write(args.out_dir.join("node_partition.txt"), lines)?;

    let mut sizes = vec![0usize; p.community_count()];
    for &l in p.labels() {
        sizes[l] += 1;
    }
    let summary = NodeSummary {
        node_count: loaded.graph.node_count(),
        edge_count: loaded.graph.edge_count(),
        community_count: p.community_count(),
        community_sizes: sizes,
        recursion_tree: p.tree(),
        config: ConfigEcho::from_config(&cfg),
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    fs::write(args.out_dir.join("summary.json"), format!("{json}\n"))?;
    match args.format {
        FormatArg::Json => println!("{json}"),
        FormatArg::Text => println!(
            "{} nodes, {} edges -> {} node communities (sizes {:?})",
            summary.node_count, summary.edge_count, summary.community_count, summary.community_sizes
        ),
    }

    write_manifest(
        &args.out_dir,
        "detect-nodes",
        &[&args.edges],
        Some(ConfigEcho::from_config(&cfg)),
        BTreeMap::new(),
        started,
    )
}

fn cmd_gen_bkn(args: GenBknArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let cfg = BknConfig {
        x: args.x,
        y: args.y,
        z: args.z,
        expected_degree: args.k,
        rng_seed: args.rng_seed,
    };
    let inst = generate_bkn(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    ensure_out_dir(&args.out_dir)?;

    let labels = crate::graph::NodeLabelMap::numeric(inst.graph.node_count());
    let mut edges_out = Vec::new();
    write_edge_list(&inst.graph, &labels, &mut edges_out)?;
    fs::write(args.out_dir.join("edges.txt"), edges_out)?;

    let mut truth_out = String::new();
    for i in 0..inst.truth.node_count() {
        let ids: Vec<String> = inst
            .truth
            .memberships(i)
            .iter()
            .map(|c| c.to_string())
            .collect();
        truth_out.push_str(&format!("{i} {}\n", ids.join(",")));
    }
    fs::write(args.out_dir.join("truth.txt"), truth_out)?;

    println!(
        "generated n={} m={} (x={} y={} z={} k={}){}",
        inst.graph.node_count(),
        inst.graph.edge_count(),
        args.x,
        args.y,
        args.z,
        args.k,
        if inst.degenerate {
            " [warning: pair rates large; simple-graph collapse biases degrees]"
        } else {
            ""
        }
    );

    let mut params = BTreeMap::new();
    params.insert("x".into(), args.x.to_string());
    params.insert("y".into(), args.y.to_string());
    params.insert("z".into(), args.z.to_string());
    params.insert("k".into(), args.k.to_string());
    params.insert("rng_seed".into(), args.rng_seed.to_string());
    write_manifest(&args.out_dir, "gen-bkn", &[], None, params, started)
}

/// Parses a cover file: `<label> <comma-separated community ids>` per line.
fn parse_cover_file(path: &Path) -> Result<Memberships, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (ix, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (Some(label), Some(ids), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::Input(format!(
                "{}:{}: expected `<label> <id[,id...]>`",
                path.display(),
                ix + 1
            )));
        };
        let mut membership = Vec::new();
        for tok in ids.split(',') {
            let id: usize = tok.parse().map_err(|_| {
                CliError::Input(format!(
                    "{}:{}: bad community id {tok:?}",
                    path.display(),
                    ix + 1
                ))
            })?;
            membership.push(id);
        }
        membership.sort_unstable();
        membership.dedup();
        if out.insert(label.to_string(), membership).is_some() {
            return Err(CliError::Input(format!(
                "{}:{}: node {label:?} listed twice",
                path.display(),
                ix + 1
            )));
        }
    }
    if out.is_empty() {
        return Err(CliError::Input(format!("{}: empty file", path.display())));
    }
    Ok(out)
}

type Memberships = BTreeMap<String, Vec<usize>>;
/// Prediction and truth membership vectors aligned over the truth's labels.
type AlignedMemberships = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Aligns prediction and truth over the truth's node set (sorted by label).
///
/// In cover mode the truth is the node universe: prediction nodes must be a
/// subset, and nodes the prediction never mentions (e.g. isolated nodes that
/// an edge list cannot carry) count as empty membership. Partition mode
/// requires the two node sets to match exactly.
fn align(
    pred: &Memberships,
    truth: &Memberships,
    allow_missing_pred: bool,
) -> Result<AlignedMemberships, CliError> {
    if let Some(unknown) = pred.keys().find(|label| !truth.contains_key(*label)) {
        return Err(CliError::Input(format!(
            "prediction mentions node {unknown:?} absent from the truth file"
        )));
    }
    if !allow_missing_pred && pred.len() != truth.len() {
        return Err(CliError::Input(
            "prediction and truth cover different node sets".into(),
        ));
    }
    let mut pred_aligned = Vec::with_capacity(truth.len());
    let mut truth_aligned = Vec::with_capacity(truth.len());
    for (label, membership) in truth {
        pred_aligned.push(pred.get(label).cloned().unwrap_or_default());
        truth_aligned.push(membership.clone());
    }
    Ok((pred_aligned, truth_aligned))
}

#[derive(Serialize)]
struct CoverReport {
    mode: String,
    node_count: usize,
    fvcc: f64,
    jaccard: f64,
    pred_overlap_size: usize,
    truth_overlap_size: usize,
    /// Jaccard = 1 by convention when both overlap sets are empty.
    both_overlaps_empty: bool,
}

#[derive(Serialize)]
struct PartitionReport {
    mode: String,
    node_count: usize,
    nmi: f64,
    pred_communities: usize,
    truth_communities: usize,
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let started = Instant::now();
    ensure_out_dir(&args.out_dir)?;
    let pred = parse_cover_file(&args.pred)?;
    let truth = parse_cover_file(&args.truth)?;
    let (pred_m, truth_m) = align(&pred, &truth, matches!(args.mode, EvalMode::Cover))?;

    let json = match args.mode {
        EvalMode::Cover => {
            let pred_cover = NodeCover::from_memberships(pred_m);
            let truth_cover = GroundTruthCover::from_memberships(truth_m)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let f = fvcc(&pred_cover, &truth_cover).map_err(|e| CliError::Input(e.to_string()))?;
            let pred_overlap: std::collections::BTreeSet<NodeId> =
                pred_cover.overlap_nodes().into_iter().collect();
            let truth_overlap = truth_cover.overlap_nodes();
            let j = jaccard_overlap(&pred_overlap, &truth_overlap);
            let report = CoverReport {
                mode: "cover".into(),
                node_count: pred_cover.node_count(),
                fvcc: f,
                jaccard: j,
                pred_overlap_size: pred_overlap.len(),
                truth_overlap_size: truth_overlap.len(),
                both_overlaps_empty: pred_overlap.is_empty() && truth_overlap.is_empty(),
            };
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
        EvalMode::Partition => {
            let to_labels = |m: Vec<Vec<usize>>, which: &str| -> Result<Vec<usize>, CliError> {
                let raw: Vec<usize> = m
                    .iter()
                    .map(|ids| {
                        if ids.len() == 1 {
                            Ok(ids[0])
                        } else {
                            Err(CliError::Input(format!(
                                "{which} file assigns {} communities to a node; \
                                 partition mode needs exactly one",
                                ids.len()
                            )))
                        }
                    })
                    .collect::<Result<_, _>>()?;
                // Densify arbitrary ids.
                let mut distinct: Vec<usize> = raw.clone();
                distinct.sort_unstable();
                distinct.dedup();
                Ok(raw
                    .iter()
                    .map(|id| distinct.binary_search(id).unwrap())
                    .collect())
            };
            let a = to_labels(pred_m, "prediction")?;
            let b = to_labels(truth_m, "truth")?;
            let value = nmi(&a, &b).map_err(|e| CliError::Input(e.to_string()))?;
            let count = |l: &[usize]| l.iter().copied().max().map_or(0, |m| m + 1);
            let report = PartitionReport {
                mode: "partition".into(),
                node_count: a.len(),
                nmi: value,
                pred_communities: count(&a),
                truth_communities: count(&b),
            };
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
    };
    fs::write(args.out_dir.join("report.json"), format!("{json}\n"))?;
    println!("{json}");

    write_manifest(
        &args.out_dir,
        "eval",
        &[&args.pred, &args.truth],
        None,
        BTreeMap::new(),
        started,
    )
}

#[derive(Serialize)]
struct SpectralReport {
    edge_count: usize,
    lambda2: f64,
    inv_lambda2: f64,
    step_bound: usize,
    iterations: usize,
}

fn cmd_spectral(args: SpectralArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let loaded = load_graph_file(&args.edges)?;
    ensure_out_dir(&args.out_dir)?;
    let t = build_transition(&loaded.graph);
    let gen = MarkovGenerator::new(&t);
    let est = estimate_lambda2(&gen, args.tol, args.max_iter).map_err(|e| match e {
        SpectralError::NonConvergence(_) => CliError::Numerical(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })?;
    let report = SpectralReport {
        edge_count: loaded.graph.edge_count(),
        lambda2: est.lambda2,
        inv_lambda2: 1.0 / est.lambda2,
        step_bound: (1.0 / est.lambda2 - 1e-6).ceil().max(1.0) as usize,
        iterations: est.iterations,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{json}");
    fs::write(args.out_dir.join("spectral.json"), format!("{json}\n"))?;

    let mut params = BTreeMap::new();
    params.insert("tol".into(), args.tol.to_string());
    params.insert("max_iter".into(), args.max_iter.to_string());
    write_manifest(
        &args.out_dir,
        "spectral",
        &[&args.edges],
        None,
        params,
        started,
    )
}

fn cmd_dump_alpha(args: DumpAlphaArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let loaded = load_graph_file(&args.edges)?;
    ensure_out_dir(&args.out_dir)?;

    let Some((lu, lv)) = args.seed_edge.split_once(',') else {
        return Err(CliError::Usage(format!(
            "--seed-edge expects `<label_u>,<label_v>`, got {:?}",
            args.seed_edge
        )));
    };
    let find = |label: &str| {
        loaded
            .labels
            .id(label)
            .ok_or_else(|| CliError::Input(format!("unknown node label {label:?}")))
    };
    let (u, v) = (find(lu.trim())?, find(lv.trim())?);
    let Some(seed) = loaded.graph.edge_between(u, v) else {
        return Err(CliError::Input(format!(
            "no edge between {lu:?} and {lv:?}"
        )));
    };

    let t = build_transition(&loaded.graph);
    let a0 = unit_distribution(loaded.graph.edge_count(), seed)
        .expect("seed id comes from the graph");
    let alpha = propagate(&t, &a0, args.steps).expect("distribution matches operator");

    let eps = 1.0 / loaded.graph.edge_count() as f64;
    let mut csv = String::new();
    csv.push_str(&format!("# epsilon,{eps}\n"));
    csv.push_str("edge_u,edge_v,probability\n");
    for (e, &p) in alpha.probs().iter().enumerate() {
        let (a, b) = loaded.graph.endpoints(e);
        csv.push_str(&format!(
            "{},{},{}\n",
            loaded.labels.label(a),
            loaded.labels.label(b),
            p
        ));
    }
    fs::write(args.out_dir.join("alpha.csv"), &csv)?;
    print!("{csv}");

    let mut params = BTreeMap::new();
    params.insert("seed_edge".into(), args.seed_edge.clone());
    params.insert("steps".into(), args.steps.to_string());
    write_manifest(
        &args.out_dir,
        "dump-alpha",
        &[&args.edges],
        None,
        params,
        started,
    )
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let cfg = args.detector.to_config()?;
    ensure_out_dir(&args.out_dir)?;
    let degrees: Vec<f64> = args
        .k_values
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad degree value {tok:?} in --k-values")))
        })
        .collect::<Result<_, _>>()?;
    if degrees.is_empty() {
        return Err(CliError::Usage("--k-values must name at least one degree".into()));
    }
    if args.instances == 0 {
        return Err(CliError::Usage("--instances must be at least 1".into()));
    }

    let rows = sweep_expected_degree(
        args.x,
        args.y,
        args.z,
        &degrees,
        args.instances,
        cfg.rng_seed,
        &cfg,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut csv = String::from("param,instance,fvcc,jaccard,nmi\n");
    for r in &rows {
        let nmi_field = r.nmi.map(|v| v.to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.param, r.instance, r.fvcc, r.jaccard, nmi_field
        ));
    }
    fs::write(args.out_dir.join("sweep.csv"), &csv)?;
    print!("{csv}");

    let mut params = BTreeMap::new();
    params.insert("x".into(), args.x.to_string());
    params.insert("y".into(), args.y.to_string());
    params.insert("z".into(), args.z.to_string());
    params.insert("k_values".into(), args.k_values.clone());
    params.insert("instances".into(), args.instances.to_string());
    write_manifest(
        &args.out_dir,
        "sweep",
        &[],
        Some(ConfigEcho::from_config(&cfg)),
        params,
        started,
    )
}

/// Writes the four cover-statistic cumulative distributions as CSV files
/// into `out_dir`.
fn write_cover_statistics(
    out_dir: &Path,
    cover: &NodeCover,
    p: &LinkPartition,
) -> Result<(), CliError> {
    let stats = cover_statistics(cover, p);
    for (name, values) in [
        ("community_size", &stats.community_sizes),
        ("overlap_size", &stats.overlap_sizes),
        ("membership_number", &stats.membership_numbers),
        ("community_degree", &stats.community_degrees),
    ] {
        let mut csv = String::from("value,cumulative_prob\n");
        for (v, prob) in cumulative_ge(values) {
            csv.push_str(&format!("{v},{prob}\n"));
        }
        let mut f = fs::File::create(out_dir.join(format!("{name}.csv")))?;
        f.write_all(csv.as_bytes())?;
    }
    Ok(())
}
