//! Node-community extension: node-arrival probabilities derived from the
//! link walk, thresholding against the per-node stationary cutoff, neighbor
//! majority refinement, and the recursive bisection for non-overlapping node
//! communities.
//!
//! The arrival probability of node `i` is half the sum of the walk's edge
//! probabilities over its incident edges; at stationarity this is exactly
//! `d_i / 2m`, which serves as the per-node cutoff.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph, NodeId};
use crate::linkdyn::{build_transition, EdgeDistribution};
use crate::partition::{accept_split, density_counts, ulc_with, TreeNode, TreeNodeKind};
use crate::spectral::{step_bound, MarkovGenerator};

pub use crate::partition::DetectorConfig;

/// Node-arrival probabilities of the walk, with the stationary cutoff.
#[derive(Debug, Clone)]
pub struct NodeDistribution {
    psi: Vec<f64>,
    stationary: Vec<f64>,
    steps: usize,
}

impl NodeDistribution {
    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    /// Stationary cutoff `d_i / 2m`, exact.
    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

/// Computes node-arrival probabilities from an edge distribution over `g`.
#[allow(clippy::needless_range_loop)]
pub fn node_probability(g: &Graph, alpha: &EdgeDistribution) -> NodeDistribution {
    assert_eq!(alpha.len(), g.edge_count(), "distribution must match g");
    let two_m = 2.0 * g.edge_count() as f64;
    let mut psi = vec![0.0; g.node_count()];
    for i in 0..g.node_count() {
        let mut sum = 0.0;
        for &(_, e) in g.neighbors(i) {
            sum += alpha.probs()[e];
        }
        psi[i] = 0.5 * sum;
    }
    let stationary = (0..g.node_count())
        .map(|i| g.degree(i) as f64 / two_m)
        .collect();
    NodeDistribution {
        psi,
        stationary,
        steps: alpha.steps(),
    }
}

/// Splits nodes at their stationary cutoffs; ties go to the in-set.
pub fn node_bipartition(nd: &NodeDistribution) -> (Vec<NodeId>, Vec<NodeId>) {
    let mut in_nodes = Vec::new();
    let mut out_nodes = Vec::new();
    for (i, (&p, &cut)) in nd.psi.iter().zip(&nd.stationary).enumerate() {
        if p >= cut {
            in_nodes.push(i);
        } else {
            out_nodes.push(i);
        }
    }
    (in_nodes, out_nodes)
}

/// Result of [`majority_refine`]: the refined two-way assignment plus the cut
/// size recorded after every sweep (strictly decreasing until the fixed
/// point, which is how termination is guaranteed).
#[derive(Debug, Clone)]
pub struct RefineOutcome {
    /// `true` = in-set.
    pub assignment: Vec<bool>,
    pub sweeps: usize,
    pub cut_sizes: Vec<usize>,
}

const MAX_REFINE_SWEEPS: usize = 100;

/// Moves every node siding against the strict majority of its neighbors,
/// sweeping in ascending node order with sequential updates until a fixed
/// point (or the sweep cap). Exact neighbor ties leave the node in place.
pub fn majority_refine(g: &Graph, assignment: Vec<bool>) -> RefineOutcome {
    assert_eq!(assignment.len(), g.node_count());
    let mut assignment = assignment;
    let mut cut_sizes = Vec::new();
    let mut sweeps = 0;
    loop {
        let mut moved = false;
        for i in 0..g.node_count() {
            let mut same = 0usize;
            let mut other = 0usize;
            for &(j, _) in g.neighbors(i) {
                if assignment[j] == assignment[i] {
                    same += 1;
                } else {
                    other += 1;
                }
            }
            if other > same {
                assignment[i] = !assignment[i];
                moved = true;
            }
        }
        sweeps += 1;
        cut_sizes.push(cut_size(g, &assignment));
        if !moved || sweeps >= MAX_REFINE_SWEEPS {
            break;
        }
    }
    RefineOutcome {
        assignment,
        sweeps,
        cut_sizes,
    }
}

fn cut_size(g: &Graph, assignment: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| assignment[u] != assignment[v])
        .count()
}

/// A complete non-overlapping partition of a graph's nodes, with the
/// recursion tree that produced it.
#[derive(Debug, Clone)]
pub struct NodePartition {
    labels: Vec<usize>,
    community_count: usize,
    tree: Vec<TreeNode>,
}

impl NodePartition {
    /// Community label per node; labels are dense in depth-first discovery
    /// order.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn tree(&self) -> &[TreeNode] {
        &self.tree
    }

    pub fn community_nodes(&self, label: usize) -> Vec<NodeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == label)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Recursively bisects the nodes of `g` into non-overlapping communities.
///
/// Each level runs the link walk on the node-induced subgraph, converts to
/// node-arrival probabilities, thresholds at the stationary cutoff, refines
/// by neighbor majority, and keeps the split only if neither side's density
/// (after refinement) falls below the parent's. Deterministic per RNG seed.
pub fn uelc_nodes(g: &Graph, cfg: &DetectorConfig) -> NodePartition {
    let mut state = NodeRecursion {
        g,
        cfg,
        tree: Vec::new(),
        labels: vec![usize::MAX; g.node_count()],
        next_label: 0,
    };
    // Top level: one recursion per connected component; isolated nodes are
    // their own (singleton) communities.
    let comps = node_components(g, &(0..g.node_count()).collect::<Vec<_>>());
    for (ci, nodes) in comps.iter().enumerate() {
        let stream = mix(cfg.rng_seed, ci as u64);
        state.recurse(nodes, stream, None, TreeNodeKind::Component);
    }
    NodePartition {
        labels: state.labels,
        community_count: state.next_label,
        tree: state.tree,
    }
}

struct NodeRecursion<'a> {
    g: &'a Graph,
    cfg: &'a DetectorConfig,
    tree: Vec<TreeNode>,
    labels: Vec<usize>,
    next_label: usize,
}

/// Induced subgraph over a node set: local graph plus local-to-parent map.
struct InducedNodes {
    graph: Graph,
    node_back: Vec<NodeId>,
}

fn induce_nodes(g: &Graph, nodes: &[NodeId]) -> InducedNodes {
    let mut node_back = nodes.to_vec();
    node_back.sort_unstable();
    node_back.dedup();
    let local_of: std::collections::HashMap<NodeId, usize> = node_back
        .iter()
        .enumerate()
        .map(|(l, &p)| (p, l))
        .collect();
    let mut pairs = Vec::new();
    for &u in &node_back {
        for &(v, _) in g.neighbors(u) {
            if u < v {
                if let Some(&lv) = local_of.get(&v) {
                    pairs.push((local_of[&u], lv));
                }
            }
        }
    }
    let graph = Graph::from_edges(node_back.len(), pairs).expect("induced pairs are simple");
    InducedNodes { graph, node_back }
}

/// Connected components of the subgraph induced by `nodes` (parent ids);
/// singletons included, ordered by smallest member.
fn node_components(g: &Graph, nodes: &[NodeId]) -> Vec<Vec<NodeId>> {
    let ind = induce_nodes(g, nodes);
    let n = ind.graph.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, _) in ind.graph.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    let mut out = vec![Vec::new(); count];
    for (local, &c) in comp.iter().enumerate() {
        out[c].push(ind.node_back[local]);
    }
    out
}

impl NodeRecursion<'_> {
    fn recurse(
        &mut self,
        nodes: &[NodeId],
        stream: u64,
        parent: Option<usize>,
        kind: TreeNodeKind,
    ) -> usize {
        let ind = induce_nodes(self.g, nodes);
        let (n_s, m_s) = (ind.graph.node_count(), ind.graph.edge_count());
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

        let mut is_leaf = n_s <= 2 || m_s < self.cfg.min_edges_leaf;
        if !is_leaf {
            match self.try_split(&ind, density, stream, node_id) {
                Some((in_side, out_side)) => {
                    for (ordinal, side) in [in_side, out_side].into_iter().enumerate() {
                        let side_stream = mix(stream, 1 + ordinal as u64);
                        let side_parent: Vec<NodeId> =
                            side.iter().map(|&l| ind.node_back[l]).collect();
                        let comps = node_components(self.g, &side_parent);
                        if comps.len() == 1 {
                            let child = self.recurse(
                                &comps[0],
                                mix(side_stream, 0),
                                Some(node_id),
                                TreeNodeKind::Side,
                            );
                            self.tree[node_id].children.push(child);
                        } else {
                            let side_ind = induce_nodes(self.g, &side_parent);
                            let side_id = self.tree.len();
                            self.tree.push(TreeNode {
                                parent: Some(node_id),
                                kind: TreeNodeKind::Side,
                                edge_count: side_ind.graph.edge_count(),
                                node_count: side_ind.graph.node_count(),
                                density: density_counts(
                                    side_ind.graph.node_count(),
                                    side_ind.graph.edge_count(),
                                ),
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
                                    mix(side_stream, k as u64),
                                    Some(side_id),
                                    TreeNodeKind::Component,
                                );
                                self.tree[side_id].children.push(child);
                            }
                        }
                    }
                }
                None => is_leaf = true,
            }
        }

        if is_leaf {
            let label = self.next_label;
            self.next_label += 1;
            self.tree[node_id].community = Some(label);
            for &i in nodes {
                self.labels[i] = label;
            }
        }
        node_id
    }

    /// One level of node bisection on a connected induced subgraph. Returns
    /// local node sets `(in, out)` when a split passes the density gate.
    fn try_split(
        &mut self,
        ind: &InducedNodes,
        parent_density: f64,
        stream: u64,
        tree_ix: usize,
    ) -> Option<(Vec<NodeId>, Vec<NodeId>)> {
        let t = build_transition(&ind.graph);
        let bound = step_bound(&self.cfg.step_policy, Some(&MarkovGenerator::new(&t)));
        self.tree[tree_ix].steps = Some(bound.steps);
        self.tree[tree_ix].lambda2 = bound.lambda2;
        self.tree[tree_ix].step_fell_back = bound.fell_back;

        let m = ind.graph.edge_count();
        let trials = self.cfg.seed_trials.max(1).min(m);
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let seeds = rand::seq::index::sample(&mut rng, m, trials);

        // (min side density, in density, out density, in side, out side)
        type Candidate = (f64, f64, f64, Vec<NodeId>, Vec<NodeId>);
        let mut best: Option<Candidate> = None;
        for seed in seeds {
            let alpha = ulc_with(&t, seed as EdgeId, bound.steps).expect("seed in range");
            let nd = node_probability(&ind.graph, &alpha);
            let (in_nodes, _) = node_bipartition(&nd);
            let mut assignment = vec![false; ind.graph.node_count()];
            for &i in &in_nodes {
                assignment[i] = true;
            }
            let refined = majority_refine(&ind.graph, assignment).assignment;
            let in_side: Vec<NodeId> = (0..refined.len()).filter(|&i| refined[i]).collect();
            let out_side: Vec<NodeId> = (0..refined.len()).filter(|&i| !refined[i]).collect();
            if in_side.is_empty() || out_side.is_empty() {
                continue;
            }
            let d_in = side_density(&ind.graph, &in_side);
            let d_out = side_density(&ind.graph, &out_side);
            let score = d_in.min(d_out);
            if best.as_ref().is_none_or(|(s, ..)| score > *s) {
                best = Some((score, d_in, d_out, in_side, out_side));
            }
        }
        let (_, d_in, d_out, in_side, out_side) = best?;
        if !accept_split(parent_density, d_in, d_out) {
            return None;
        }
        Some((in_side, out_side))
    }
}

/// Density of the subgraph induced by a node side (local ids of `g`).
fn side_density(g: &Graph, side: &[NodeId]) -> f64 {
    let member: std::collections::HashSet<NodeId> = side.iter().copied().collect();
    let m_s = g
        .edges()
        .iter()
        .filter(|&&(u, v)| member.contains(&u) && member.contains(&v))
        .count();
    density_counts(side.len(), m_s)
}

use crate::partition::mix_seed as mix;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;
    use crate::linkdyn::unit_distribution;
    use std::io::Cursor;

    fn load(text: &str) -> Graph {
        load_edge_list(Cursor::new(text)).unwrap().graph
    }

    fn clique_lines(prefix: &str, q: usize) -> String {
        let mut s = String::new();
        for u in 0..q {
            for v in (u + 1)..q {
                s.push_str(&format!("{prefix}{u} {prefix}{v}\n"));
            }
        }
        s
    }

    #[test]
    fn psi_of_uniform_alpha_is_stationary() {
        let g = load("1 2\n1 3\n2 3\n");
        let alpha = EdgeDistribution::from_probs(vec![1.0 / 3.0; 3], 10).unwrap();
        let nd = node_probability(&g, &alpha);
        for i in 0..3 {
            assert!((nd.psi()[i] - 1.0 / 3.0).abs() < 1e-15);
            assert!((nd.psi()[i] - nd.stationary()[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn psi_of_one_hot_on_path() {
        let g = load("1 2\n2 3\n");
        let alpha = unit_distribution(2, 0).unwrap();
        let nd = node_probability(&g, &alpha);
        assert_eq!(nd.psi(), &[0.5, 0.5, 0.0]);
        assert_eq!(nd.stationary(), &[0.25, 0.5, 0.25]);
        let (in_nodes, out_nodes) = node_bipartition(&nd);
        assert_eq!(in_nodes, vec![0, 1]);
        assert_eq!(out_nodes, vec![2]);
    }

    #[test]
    fn bipartition_at_stationarity_keeps_everything_in() {
        let g = load("1 2\n1 3\n2 3\n");
        let alpha = EdgeDistribution::from_probs(vec![1.0 / 3.0; 3], 50).unwrap();
        let nd = node_probability(&g, &alpha);
        let (in_nodes, out_nodes) = node_bipartition(&nd);
        assert_eq!(in_nodes.len(), 3);
        assert!(out_nodes.is_empty());
    }

    #[test]
    fn refine_fixed_point_is_unchanged() {
        let g = load(&format!("{}{}a0 b0\n", clique_lines("a", 5), clique_lines("b", 5)));
        // Clique "a" nodes are local ids 0..5, clique "b" are 5..10.
        let assignment: Vec<bool> = (0..10).map(|i| i < 5).collect();
        let out = majority_refine(&g, assignment.clone());
        assert_eq!(out.assignment, assignment);
        assert_eq!(out.sweeps, 1);
    }

    #[test]
    fn refine_corrects_one_mislabeled_clique_node() {
        let g = load(&format!("{}{}a0 b0\n", clique_lines("a", 5), clique_lines("b", 5)));
        let mut assignment: Vec<bool> = (0..10).map(|i| i < 5).collect();
        assignment[3] = false; // a3 sided with the b clique
        let out = majority_refine(&g, assignment);
        assert!(out.assignment[3]);
        assert_eq!(out.sweeps, 2); // one correcting sweep, one to confirm
    }

    #[test]
    fn refine_leaves_cycle_ties_alone() {
        let g = load("1 2\n2 3\n3 4\n4 1\n");
        // Split the 4-cycle into adjacent halves {1,2} / {3,4}: every node
        // sees one neighbor of each color, an exact tie, so nothing moves.
        let assignment = vec![true, true, false, false];
        let out = majority_refine(&g, assignment.clone());
        assert_eq!(out.assignment, assignment);
        assert_eq!(out.sweeps, 1);
    }

    #[test]
    fn refine_cut_size_strictly_decreases() {
        let g = load(&format!(
            "{}{}a0 b0\na1 b1\n",
            clique_lines("a", 6),
            clique_lines("b", 6)
        ));
        let mut assignment: Vec<bool> = (0..12).map(|i| i < 6).collect();
        assignment[2] = false;
        assignment[8] = true;
        let out = majority_refine(&g, assignment);
        for w in out.cut_sizes.windows(2) {
            assert!(w[1] <= w[0], "cut grew: {:?}", out.cut_sizes);
        }
    }

    #[test]
    fn two_cliques_give_two_node_communities() {
        let g = load(&format!("{}{}a0 b0\n", clique_lines("a", 6), clique_lines("b", 6)));
        let cfg = DetectorConfig {
            seed_trials: 3,
            ..Default::default()
        };
        let p = uelc_nodes(&g, &cfg);
        assert_eq!(p.community_count(), 2);
        // Sides are exactly the cliques: a0..a5 are ids 0..6.
        let c0 = p.labels()[0];
        for i in 0..6 {
            assert_eq!(p.labels()[i], c0);
        }
        for i in 6..12 {
            assert_ne!(p.labels()[i], c0);
        }
    }

    #[test]
    fn single_clique_is_one_community() {
        let g = load(&clique_lines("n", 7));
        let p = uelc_nodes(&g, &DetectorConfig::default());
        assert_eq!(p.community_count(), 1);
    }

    #[test]
    fn every_node_gets_exactly_one_label() {
        let g = load("a b\nb c\nc a\nx y\ny z\nz x\na x\n");
        let p = uelc_nodes(
            &g,
            &DetectorConfig {
                seed_trials: 2,
                ..Default::default()
            },
        );
        assert!(p.labels().iter().all(|&l| l < p.community_count()));
    }

    #[test]
    fn node_recursion_is_deterministic() {
        let g = load(&format!(
            "{}{}a0 b0\na1 b2\n",
            clique_lines("a", 6),
            clique_lines("b", 6)
        ));
        let cfg = DetectorConfig {
            seed_trials: 2,
            rng_seed: 11,
            ..Default::default()
        };
        let p1 = uelc_nodes(&g, &cfg);
        let p2 = uelc_nodes(&g, &cfg);
        assert_eq!(p1.labels(), p2.labels());
    }

    #[test]
    fn isolated_nodes_become_singleton_communities() {
        let g = Graph::from_edges(4, vec![(0, 1), (1, 2)]).unwrap();
        let p = uelc_nodes(&g, &DetectorConfig::default());
        let label3 = p.labels()[3];
        assert!((0..3).all(|i| p.labels()[i] != label3));
    }
}
