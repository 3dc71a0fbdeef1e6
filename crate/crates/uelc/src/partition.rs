//! The recursive link-community detector: unfold the walk (ULC), extract the
//! two emerged communities at the global-mixing threshold (ELC), accept or
//! reject the split by link density, and recurse on the accepted sides.
//!
//! A subnetwork becomes a leaf community when no seed produces a two-sided
//! split, when the split fails the density gate, or when it is too small to
//! split. Top-level detection runs independently per connected component, and
//! accepted sides are split into connected components before recursing: the
//! walk is only defined on a connected domain.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{
    connected_components, edge_set_components, induced_by_edges, EdgeId, Graph, NodeId, Subgraph,
};
use crate::linkdyn::{
    build_transition, propagate, unit_distribution, EdgeDistribution, LinkDynError, LinkTransition,
};
use crate::spectral::{step_bound, MarkovGenerator, StepPolicy};

/// Knobs of the recursive detector.
#[derive(Debug, Clone, Copy)]
pub struct DetectorConfig {
    pub step_policy: StepPolicy,
    /// Master seed; every recursion subtree derives its own stream from it,
    /// so parallel and sequential execution would draw identically.
    pub rng_seed: u64,
    /// Seeds tried per bipartition; the split maximizing the smaller side
    /// density wins.
    pub seed_trials: usize,
    /// Subnetworks with fewer edges are never split.
    pub min_edges_leaf: usize,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            step_policy: StepPolicy::default(),
            rng_seed: 0,
            seed_trials: 1,
            min_edges_leaf: 2,
        }
    }
}

/// One attempted two-way split of a subnetwork's edges.
///
/// `in_set` holds the edges at or above the stable probability `1/m`,
/// `out_set` the rest; ids are local to the subnetwork.
#[derive(Debug, Clone)]
pub struct LinkBipartition {
    pub seed: EdgeId,
    pub steps: usize,
    pub in_set: Vec<EdgeId>,
    pub out_set: Vec<EdgeId>,
    pub alpha: Vec<f64>,
}

/// Result of a bipartition attempt: either a two-sided split or the verdict
/// that no tried seed could produce one.
#[derive(Debug, Clone)]
pub enum BipartitionOutcome {
    Split(LinkBipartition),
    Reject,
}

/// Runs the walk from a one-hot start at `seed` for `steps` steps.
pub fn ulc(sub: &Subgraph, seed: EdgeId, steps: usize) -> Result<EdgeDistribution, LinkDynError> {
    let t = build_transition(&sub.graph);
    ulc_with(&t, seed, steps)
}

/// Same as [`ulc`] but reuses a prebuilt transition operator.
pub fn ulc_with(
    t: &LinkTransition,
    seed: EdgeId,
    steps: usize,
) -> Result<EdgeDistribution, LinkDynError> {
    let a0 = unit_distribution(t.edge_count(), seed)?;
    propagate(t, &a0, steps)
}

/// Thresholds a distribution at the global mixing state `1/m`.
///
/// Ties go to the in-set; in the uniform limit everything lands in-set and
/// the degenerate empty out-set signals a non-partitionable subnetwork.
pub fn elc(alpha: &EdgeDistribution, seed: EdgeId) -> LinkBipartition {
    let m = alpha.len();
    let eps = 1.0 / m as f64;
    let mut in_set = Vec::new();
    let mut out_set = Vec::new();
    for (e, &p) in alpha.probs().iter().enumerate() {
        if p >= eps {
            in_set.push(e);
        } else {
            out_set.push(e);
        }
    }
    LinkBipartition {
        seed,
        steps: alpha.steps(),
        in_set,
        out_set,
        alpha: alpha.probs().to_vec(),
    }
}

/// Link density of `m_s` edges over `n_s` connected nodes: 0 for a tree, 1
/// for a clique, 0 by convention when `n_s = 2`, and negative when the edge
/// set does not even span a tree (disconnected sides).
pub fn density_counts(n_s: usize, m_s: usize) -> f64 {
    if n_s <= 2 {
        return 0.0;
    }
    let n = n_s as f64;
    let m = m_s as f64;
    (m - (n - 1.0)) / (n * (n - 1.0) / 2.0 - (n - 1.0))
}

/// Link density of an isolated subnetwork.
pub fn link_density(sub: &Subgraph) -> f64 {
    density_counts(sub.graph.node_count(), sub.graph.edge_count())
}

fn edge_set_density(g: &Graph, edges: &[EdgeId]) -> f64 {
    let mut nodes: Vec<NodeId> = edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    density_counts(nodes.len(), edges.len())
}

/// The density gate: a split stands only if neither side falls below the
/// density of the network it came from (equality accepted).
pub fn accept_split(parent_density: f64, left_density: f64, right_density: f64) -> bool {
    left_density.min(right_density) >= parent_density
}

/// Tries `seed_trials` distinct uniformly drawn seed edges and returns the
/// two-sided split maximizing the smaller side density, or `Reject` when
/// every candidate came back one-sided.
pub fn bipartition_once(
    sub: &Subgraph,
    cfg: &DetectorConfig,
    rng: &mut ChaCha8Rng,
) -> BipartitionOutcome {
    let t = build_transition(&sub.graph);
    let bound = step_bound(&cfg.step_policy, Some(&MarkovGenerator::new(&t)));
    bipartition_trials(sub, &t, bound.steps, cfg.seed_trials, rng)
}

fn bipartition_trials(
    sub: &Subgraph,
    t: &LinkTransition,
    steps: usize,
    seed_trials: usize,
    rng: &mut ChaCha8Rng,
) -> BipartitionOutcome {
    let m = sub.graph.edge_count();
    let trials = seed_trials.max(1).min(m);
    let seeds = rand::seq::index::sample(rng, m, trials);
    let mut best: Option<(f64, LinkBipartition)> = None;
    for seed in seeds {
        let alpha = ulc_with(t, seed, steps).expect("seed drawn in range");
        let bp = elc(&alpha, seed);
        if bp.out_set.is_empty() {
            continue;
        }
        let d_in = edge_set_density(&sub.graph, &bp.in_set);
        let d_out = edge_set_density(&sub.graph, &bp.out_set);
        let score = d_in.min(d_out);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, bp));
        }
    }
    match best {
        Some((_, bp)) => BipartitionOutcome::Split(bp),
        None => BipartitionOutcome::Reject,
    }
}

/// Role of a node in the recursion tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNodeKind {
    /// A connected walk domain: a top-level component or a connected piece
    /// of an accepted side.
    Component,
    /// One side of an accepted bipartition; its density passed the gate.
    Side,
}

/// One subnetwork examined during recursion.
#[derive(Debug, Clone, Serialize)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub kind: TreeNodeKind,
    pub edge_count: usize,
    pub node_count: usize,
    pub density: f64,
    /// Walk length used when a split was attempted here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<f64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub step_fell_back: bool,
    /// Community label when this node ended as a leaf.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub community: Option<usize>,
    pub children: Vec<usize>,
}

/// Per-community bookkeeping for reports.
#[derive(Debug, Clone, Serialize)]
pub struct CommunityStats {
    pub edge_count: usize,
    pub node_count: usize,
    pub density: f64,
}

/// A complete disjoint partition of a graph's edges into link communities,
/// together with the recursion tree that produced it.
#[derive(Debug, Clone)]
pub struct LinkPartition {
    labels: Vec<usize>,
    community_count: usize,
    tree: Vec<TreeNode>,
    stats: Vec<CommunityStats>,
}

impl LinkPartition {
    /// Community label per edge id; labels are dense `0..community_count`
    /// in depth-first discovery order.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn tree(&self) -> &[TreeNode] {
        &self.tree
    }

    pub fn community_stats(&self) -> &[CommunityStats] {
        &self.stats
    }

    /// Edge ids of one community, ascending.
    pub fn community_edges(&self, label: usize) -> Vec<EdgeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == label)
            .map(|(e, _)| e)
            .collect()
    }
}

/// Recursively partitions the links of `g`.
///
/// Deterministic for a fixed `(graph, config)` pair: every subtree draws from
/// a stream derived from the master seed and its position in the tree.
pub fn uelc(g: &Graph, cfg: &DetectorConfig) -> LinkPartition {
    let mut state = Recursion {
        g,
        cfg,
        tree: Vec::new(),
        labels: vec![usize::MAX; g.edge_count()],
        next_label: 0,
    };
    let comps = connected_components(g);
    for (ci, edges) in comps.edge_sets.iter().enumerate() {
        let stream = mix_seed(cfg.rng_seed, ci as u64);
        state.recurse(edges, stream, None, TreeNodeKind::Component);
    }

    let community_count = state.next_label;
    let mut stats = Vec::with_capacity(community_count);
    for label in 0..community_count {
        let edges: Vec<EdgeId> = state
            .labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == label)
            .map(|(e, _)| e)
            .collect();
        stats.push(CommunityStats {
            edge_count: edges.len(),
            node_count: endpoint_count(g, &edges),
            density: edge_set_density(g, &edges),
        });
    }
    LinkPartition {
        labels: state.labels,
        community_count,
        tree: state.tree,
        stats,
    }
}

struct Recursion<'a> {
    g: &'a Graph,
    cfg: &'a DetectorConfig,
    tree: Vec<TreeNode>,
    labels: Vec<usize>,
    next_label: usize,
}

impl Recursion<'_> {
    fn recurse(
        &mut self,
        edges: &[EdgeId],
        stream: u64,
        parent: Option<usize>,
        kind: TreeNodeKind,
    ) -> usize {
        let sub = induced_by_edges(self.g, edges).expect("recursion edge sets are nonempty");
        let (n_s, m_s) = (sub.graph.node_count(), sub.graph.edge_count());
        let density = density_counts(n_s, m_s);
        let node_id = self.tree.len();
        self.tree.push(TreeNode {
            parent,
            kind,
            edge_count: m_s,
            node_count: n_s,
            density,
            steps: None,
            lambda2: None,
            step_fell_back: false,
            community: None,
            children: Vec::new(),
        });

        let mut is_leaf = m_s < self.cfg.min_edges_leaf || n_s <= 2;
        if !is_leaf {
            let t = build_transition(&sub.graph);
            let bound = step_bound(&self.cfg.step_policy, Some(&MarkovGenerator::new(&t)));
            self.tree[node_id].steps = Some(bound.steps);
            self.tree[node_id].lambda2 = bound.lambda2;
            self.tree[node_id].step_fell_back = bound.fell_back;

            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            match bipartition_trials(&sub, &t, bound.steps, self.cfg.seed_trials, &mut rng) {
                BipartitionOutcome::Reject => is_leaf = true,
                BipartitionOutcome::Split(bp) => {
                    let d_in = edge_set_density(&sub.graph, &bp.in_set);
                    let d_out = edge_set_density(&sub.graph, &bp.out_set);
                    if !accept_split(density, d_in, d_out) {
                        is_leaf = true;
                    } else {
                        for (ordinal, (side, d_side)) in
                            [(&bp.in_set, d_in), (&bp.out_set, d_out)].into_iter().enumerate()
                        {
                            let side_root: Vec<EdgeId> =
                                side.iter().map(|&le| sub.edge_back[le]).collect();
                            let side_stream = mix_seed(stream, 1 + ordinal as u64);
                            let comps = edge_set_components(self.g, &side_root);
                            if comps.len() == 1 {
                                let child = self.recurse(
                                    &comps[0],
                                    mix_seed(side_stream, 0),
                                    Some(node_id),
                                    TreeNodeKind::Side,
                                );
                                self.tree[node_id].children.push(child);
                            } else {
                                // Disconnected side: record it as one tree
                                // node carrying the density the gate saw,
                                // then recurse per connected piece.
                                let side_id = self.tree.len();
                                self.tree.push(TreeNode {
                                    parent: Some(node_id),
                                    kind: TreeNodeKind::Side,
                                    edge_count: side_root.len(),
                                    node_count: endpoint_count(self.g, &side_root),
                                    density: d_side,
                                    steps: None,
                                    lambda2: None,
                                    step_fell_back: false,
                                    community: None,
                                    children: Vec::new(),
                                });
                                self.tree[node_id].children.push(side_id);
                                for (k, comp) in comps.iter().enumerate() {
                                    let child = self.recurse(
                                        comp,
                                        mix_seed(side_stream, k as u64),
                                        Some(side_id),
                                        TreeNodeKind::Component,
                                    );
                                    self.tree[side_id].children.push(child);
                                }
                            }
                        }
                    }
                }
            }
        }

        if is_leaf {
            let label = self.next_label;
            self.next_label += 1;
            self.tree[node_id].community = Some(label);
            for &e in edges {
                self.labels[e] = label;
            }
        }
        node_id
    }
}

fn endpoint_count(g: &Graph, edges: &[EdgeId]) -> usize {
    let mut nodes: Vec<NodeId> = edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    nodes.len()
}

/// splitmix64-style finalizer; derives child RNG streams from a parent
/// stream and a structural salt.
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Overlapping node membership induced by a link partition: a node belongs
/// to every community that labels one of its incident edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCover {
    memberships: Vec<Vec<usize>>,
}

impl NodeCover {
    pub fn from_memberships(memberships: Vec<Vec<usize>>) -> Self {
        let memberships = memberships
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        NodeCover { memberships }
    }

    /// Sorted community ids of node `i`; empty for isolated nodes.
    pub fn memberships(&self, i: NodeId) -> &[usize] {
        &self.memberships[i]
    }

    pub fn node_count(&self) -> usize {
        self.memberships.len()
    }

    /// Number of communities node `i` belongs to.
    pub fn membership_number(&self, i: NodeId) -> usize {
        self.memberships[i].len()
    }

    /// Nodes belonging to two or more communities, ascending.
    pub fn overlap_nodes(&self) -> Vec<NodeId> {
        (0..self.memberships.len())
            .filter(|&i| self.memberships[i].len() >= 2)
            .collect()
    }

    /// Distinct community ids present in the cover, ascending.
    pub fn community_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.memberships.iter().flatten().copied().collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Nodes of one community, ascending.
    pub fn community_nodes(&self, c: usize) -> Vec<NodeId> {
        (0..self.memberships.len())
            .filter(|&i| self.memberships[i].contains(&c))
            .collect()
    }
}

/// Derives the node cover of a link partition.
pub fn node_cover_from_links(g: &Graph, p: &LinkPartition) -> NodeCover {
    assert_eq!(p.labels().len(), g.edge_count(), "partition must cover g");
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for (e, &label) in p.labels().iter().enumerate() {
        let (u, v) = g.endpoints(e);
        memberships[u].push(label);
        memberships[v].push(label);
    }
    NodeCover::from_memberships(memberships)
}
