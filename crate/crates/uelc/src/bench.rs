//! Synthetic benchmark generation with two planted overlapping communities,
//! plus the evaluation metrics: fraction of vertices classified correctly
//! (FVCC), Jaccard overlap index, normalized mutual information (NMI), and
//! the four cover statistics.
//!
//! The generator plants `x` nodes in the first community only, `y` in the
//! second only, and `z` in both. Every node carries a per-community weight;
//! edge multiplicities are Poisson in the weight products, summed over
//! communities, and the multigraph is collapsed to a simple graph. Weights
//! are calibrated so the expected multigraph degree of every node is the
//! requested value, with overlap nodes splitting theirs evenly between the
//! two communities.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::partition::{mix_seed, LinkPartition, NodeCover};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark config: {0}")]
    InvalidConfig(String),
    #[error("FVCC compares against a bipartition; prediction has {0} communities")]
    TooManyCommunities(usize),
    #[error("partitions cover different node counts: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("partitions are empty")]
    EmptyPartition,
}

/// Parameters of one planted-overlap instance.
#[derive(Debug, Clone, Copy)]
pub struct BknConfig {
    /// Nodes in the first community only.
    pub x: usize,
    /// Nodes in the second community only.
    pub y: usize,
    /// Nodes in both communities.
    pub z: usize,
    /// Expected multigraph degree of every node.
    pub expected_degree: f64,
    pub rng_seed: u64,
}

impl BknConfig {
    pub fn node_count(&self) -> usize {
        self.x + self.y + self.z
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.node_count() < 3 {
            return Err(BenchError::InvalidConfig(format!(
                "x + y + z = {} < 3",
                self.node_count()
            )));
        }
        if !self.expected_degree.is_finite() || self.expected_degree <= 0.0 {
            return Err(BenchError::InvalidConfig(format!(
                "expected degree {} must be positive",
                self.expected_degree
            )));
        }
        Ok(())
    }

    /// Pure-member weights `(t_0, t_1)` solving the degree constraints:
    /// `t_u = sqrt(<k> / (x_u + z/2))` gives every node expected multigraph
    /// degree `<k>`, with overlap members (weight `t_u / 2` in each
    /// community) splitting theirs evenly.
    pub fn weights(&self) -> (f64, f64) {
        let half_z = self.z as f64 / 2.0;
        let t0 = (self.expected_degree / (self.x as f64 + half_z)).sqrt();
        let t1 = (self.expected_degree / (self.y as f64 + half_z)).sqrt();
        (t0, t1)
    }
}

/// Planted two-community overlapping ground truth: membership `{0}`, `{1}`,
/// or `{0, 1}` per node.
#[derive(Debug, Clone)]
pub struct GroundTruthCover {
    memberships: Vec<Vec<usize>>,
}

impl GroundTruthCover {
    pub fn from_memberships(memberships: Vec<Vec<usize>>) -> Result<Self, BenchError> {
        for (i, m) in memberships.iter().enumerate() {
            let ok = matches!(m.as_slice(), [0] | [1] | [0, 1]);
            if !ok {
                return Err(BenchError::InvalidConfig(format!(
                    "node {i} has membership {m:?}, expected [0], [1] or [0, 1]"
                )));
            }
        }
        Ok(GroundTruthCover { memberships })
    }

    pub fn memberships(&self, i: NodeId) -> &[usize] {
        &self.memberships[i]
    }

    pub fn node_count(&self) -> usize {
        self.memberships.len()
    }

    /// The set S of truly overlapping nodes.
    pub fn overlap_nodes(&self) -> BTreeSet<NodeId> {
        (0..self.memberships.len())
            .filter(|&i| self.memberships[i].len() == 2)
            .collect()
    }
}

/// A generated instance: the collapsed simple graph, its planted truth, and
/// generation diagnostics.
#[derive(Debug)]
pub struct BknInstance {
    pub graph: Graph,
    pub truth: GroundTruthCover,
    /// Largest pairwise Poisson rate; collapsing multiplicities to simple
    /// edges biases degrees downward once rates stop being small.
    pub max_pair_rate: f64,
    /// Raised when `max_pair_rate` is large enough for the collapse bias to
    /// matter (rate above 0.1 loses over ~5% of multi-edges).
    pub degenerate: bool,
}

/// Per-pair multiplicities before the simple-graph collapse; the degree
/// calibration oracle reads these directly.
pub(crate) struct BknSample {
    pub edges: Vec<(NodeId, NodeId)>,
    /// Read by the calibration oracle test, not by generation itself.
    #[cfg_attr(not(test), allow(dead_code))]
    pub multigraph_degrees: Vec<f64>,
    pub max_pair_rate: f64,
}

pub(crate) fn sample_bkn(cfg: &BknConfig) -> Result<BknSample, BenchError> {
    cfg.validate()?;
    let n = cfg.node_count();
    let (t0, t1) = cfg.weights();
    let first_only = cfg.x; // nodes [0, x)
    let both_from = cfg.x + cfg.y; // nodes [x + y, n)

    // Weight of node i in each community.
    let w0 = |i: usize| -> f64 {
        if i < first_only {
            t0
        } else if i >= both_from {
            t0 / 2.0
        } else {
            0.0
        }
    };
    let w1 = |i: usize| -> f64 {
        if i >= both_from {
            t1 / 2.0
        } else if i >= first_only {
            t1
        } else {
            0.0
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut edges = Vec::new();
    let mut degrees = vec![0.0f64; n];
    let mut max_rate = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let rate = w0(i) * w0(j) + w1(i) * w1(j);
            if rate == 0.0 {
                continue;
            }
            max_rate = max_rate.max(rate);
            let mult = poisson(rate, &mut rng);
            if mult > 0 {
                edges.push((i, j));
                degrees[i] += mult as f64;
                degrees[j] += mult as f64;
            }
        }
    }
    Ok(BknSample {
        edges,
        multigraph_degrees: degrees,
        max_pair_rate: max_rate,
    })
}

/// Knuth's method; the rates here are far below 1, so this rarely draws more
/// than one uniform.
fn poisson(rate: f64, rng: &mut ChaCha8Rng) -> u32 {
    let limit = (-rate).exp();
    let mut product = rng.gen::<f64>();
    let mut count = 0u32;
    while product > limit {
        count += 1;
        product *= rng.gen::<f64>();
    }
    count
}

/// Samples one planted-overlap instance. Deterministic per RNG seed;
/// isolated nodes stay in the node set.
pub fn generate_bkn(cfg: &BknConfig) -> Result<BknInstance, BenchError> {
    let sample = sample_bkn(cfg)?;
    let graph = Graph::from_edges(cfg.node_count(), sample.edges)
        .expect("sampled pairs are simple by construction");
    let mut memberships = Vec::with_capacity(cfg.node_count());
    for i in 0..cfg.node_count() {
        if i < cfg.x {
            memberships.push(vec![0]);
        } else if i < cfg.x + cfg.y {
            memberships.push(vec![1]);
        } else {
            memberships.push(vec![0, 1]);
        }
    }
    let truth = GroundTruthCover::from_memberships(memberships)?;
    Ok(BknInstance {
        graph,
        truth,
        max_pair_rate: sample.max_pair_rate,
        degenerate: sample.max_pair_rate > 0.1,
    })
}

/// Fraction of vertices classified correctly: under the better of the two
/// label permutations, the share of nodes whose full predicted membership
/// set equals the true one. The prediction must be a (at most two-way)
/// bipartition cover.
pub fn fvcc(pred: &NodeCover, truth: &GroundTruthCover) -> Result<f64, BenchError> {
    if pred.node_count() != truth.node_count() {
        return Err(BenchError::LengthMismatch(
            pred.node_count(),
            truth.node_count(),
        ));
    }
    let ids = pred.community_ids();
    if ids.len() > 2 {
        return Err(BenchError::TooManyCommunities(ids.len()));
    }
    let n = truth.node_count();
    if n == 0 {
        return Err(BenchError::EmptyPartition);
    }
    let canonical = |id: usize| ids.iter().position(|&c| c == id).unwrap();
    let mut best = 0usize;
    for swap in [false, true] {
        let mut correct = 0usize;
        for i in 0..n {
            let mut predicted: Vec<usize> = pred
                .memberships(i)
                .iter()
                .map(|&c| {
                    let ix = canonical(c);
                    if swap {
                        1 - ix
                    } else {
                        ix
                    }
                })
                .collect();
            predicted.sort_unstable();
            if predicted == truth.memberships(i) {
                correct += 1;
            }
        }
        best = best.max(correct);
    }
    Ok(best as f64 / n as f64)
}

/// Jaccard index `|S ∩ V| / |S ∪ V|` between the true and predicted overlap
/// node sets; 1 by convention when both are empty (callers flag that case).
pub fn jaccard_overlap(pred: &BTreeSet<NodeId>, truth: &BTreeSet<NodeId>) -> f64 {
    let union = pred.union(truth).count();
    if union == 0 {
        return 1.0;
    }
    let inter = pred.intersection(truth).count();
    inter as f64 / union as f64
}

/// Normalized mutual information between two non-overlapping partitions
/// given as label vectors over the same node set.
///
/// Confusion-matrix form with natural logarithms; 1 iff the partitions agree
/// up to relabeling, and 1 by convention when both are the single-community
/// partition.
pub fn nmi(a: &[usize], b: &[usize]) -> Result<f64, BenchError> {
    if a.len() != b.len() {
        return Err(BenchError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n == 0 {
        return Err(BenchError::EmptyPartition);
    }
    let ka = a.iter().max().unwrap() + 1;
    let kb = b.iter().max().unwrap() + 1;
    let mut counts = vec![vec![0usize; kb]; ka];
    let mut row = vec![0usize; ka];
    let mut col = vec![0usize; kb];
    for (&la, &lb) in a.iter().zip(b) {
        counts[la][lb] += 1;
        row[la] += 1;
        col[lb] += 1;
    }
    let nf = n as f64;
    let mut numerator = 0.0;
    for (i, r) in counts.iter().enumerate() {
        for (j, &c) in r.iter().enumerate() {
            if c > 0 {
                let cf = c as f64;
                numerator += cf * (cf * nf / (row[i] as f64 * col[j] as f64)).ln();
            }
        }
    }
    numerator *= -2.0;
    let entropy = |marginal: &[usize]| -> f64 {
        marginal
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| c as f64 * ((c as f64) / nf).ln())
            .sum()
    };
    let denominator = entropy(&row) + entropy(&col);
    if denominator == 0.0 {
        // Both partitions are the single community.
        return Ok(1.0);
    }
    Ok((numerator / denominator).clamp(0.0, 1.0))
}

/// The four distributions characterizing an overlapping cover: community
/// size, pairwise overlap size, per-node membership number, and community
/// degree (communities sharing at least one node with a given one).
#[derive(Debug, Clone)]
pub struct CoverStatistics {
    pub community_sizes: Vec<usize>,
    /// One entry per unordered community pair with nonzero overlap.
    pub overlap_sizes: Vec<usize>,
    pub membership_numbers: Vec<usize>,
    pub community_degrees: Vec<usize>,
}

/// Computes the cover statistics of a node cover derived from a link
/// partition.
pub fn cover_statistics(cover: &NodeCover, p: &LinkPartition) -> CoverStatistics {
    let t = p.community_count();
    let mut community_sizes = vec![0usize; t];
    for i in 0..cover.node_count() {
        for &c in cover.memberships(i) {
            community_sizes[c] += 1;
        }
    }
    let mut pair_overlap = std::collections::BTreeMap::<(usize, usize), usize>::new();
    for i in 0..cover.node_count() {
        let ms = cover.memberships(i);
        for (ix, &c1) in ms.iter().enumerate() {
            for &c2 in &ms[ix + 1..] {
                *pair_overlap.entry((c1, c2)).or_insert(0) += 1;
            }
        }
    }
    let overlap_sizes: Vec<usize> = pair_overlap.values().copied().collect();
    let membership_numbers: Vec<usize> = (0..cover.node_count())
        .map(|i| cover.membership_number(i))
        .collect();
    let mut degree_sets = vec![BTreeSet::<usize>::new(); t];
    for &(c1, c2) in pair_overlap.keys() {
        degree_sets[c1].insert(c2);
        degree_sets[c2].insert(c1);
    }
    let community_degrees = degree_sets.iter().map(|s| s.len()).collect();
    CoverStatistics {
        community_sizes,
        overlap_sizes,
        membership_numbers,
        community_degrees,
    }
}

/// Cumulative distribution `P(X >= x)` over the distinct observed values.
pub fn cumulative_ge(values: &[usize]) -> Vec<(usize, f64)> {
    if values.is_empty() {
        return Vec::new();
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let mut out = Vec::new();
    let mut ix = 0;
    while ix < sorted.len() {
        let v = sorted[ix];
        // All entries at positions >= ix are >= v.
        out.push((v, (sorted.len() - ix) as f64 / n));
        while ix < sorted.len() && sorted[ix] == v {
            ix += 1;
        }
    }
    out
}

/// One row of a benchmark sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub param: f64,
    pub instance: usize,
    pub fvcc: f64,
    pub jaccard: f64,
    /// Node-extension accuracy; only defined for non-overlapping truth
    /// (z = 0).
    pub nmi: Option<f64>,
}

/// The comparison protocol for planted instances: a single top-level
/// bipartition of the largest component, reported as a two-community node
/// cover (nodes outside the component get no membership).
pub fn bipartition_cover(
    g: &Graph,
    cfg: &crate::partition::DetectorConfig,
) -> NodeCover {
    use crate::graph::{connected_components, induced_by_edges};
    use crate::partition::{bipartition_once, BipartitionOutcome};

    let comps = connected_components(g);
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    let largest = comps
        .edge_sets
        .iter()
        .enumerate()
        .max_by_key(|(ix, set)| (set.len(), usize::MAX - ix))
        .map(|(_, set)| set);
    let Some(edges) = largest else {
        return NodeCover::from_memberships(memberships);
    };
    let sub = induced_by_edges(g, edges).expect("component edge sets are nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    match bipartition_once(&sub, cfg, &mut rng) {
        BipartitionOutcome::Split(bp) => {
            for (&side_edges, community) in [(&bp.in_set, 0usize), (&bp.out_set, 1usize)]
                .iter()
                .map(|(s, c)| (s, *c))
            {
                for &le in side_edges.iter() {
                    let (lu, lv) = sub.graph.endpoints(le);
                    for local in [lu, lv] {
                        let parent = sub.node_back[local];
                        if !memberships[parent].contains(&community) {
                            memberships[parent].push(community);
                        }
                    }
                }
            }
        }
        BipartitionOutcome::Reject => {
            for &parent in &sub.node_back {
                memberships[parent].push(0);
            }
        }
    }
    NodeCover::from_memberships(memberships)
}

/// Runs the planted-overlap sweep over expected degrees: per (degree,
/// instance), generate, bipartition, and score. NMI against the planted
/// two-way partition is added when the overlap is empty.
pub fn sweep_expected_degree(
    x: usize,
    y: usize,
    z: usize,
    degrees: &[f64],
    instances: usize,
    master_seed: u64,
    detector: &crate::partition::DetectorConfig,
) -> Result<Vec<SweepPoint>, BenchError> {
    let mut rows = Vec::new();
    for (kix, &k) in degrees.iter().enumerate() {
        for instance in 0..instances {
            let stream = mix_seed(master_seed, (kix * instances + instance) as u64);
            let inst = generate_bkn(&BknConfig {
                x,
                y,
                z,
                expected_degree: k,
                rng_seed: stream,
            })?;
            let mut cfg = *detector;
            cfg.rng_seed = mix_seed(stream, 1);
            let cover = bipartition_cover(&inst.graph, &cfg);
            let f = fvcc(&cover, &inst.truth)?;
            let pred_overlap: BTreeSet<NodeId> = cover.overlap_nodes().into_iter().collect();
            let j = jaccard_overlap(&pred_overlap, &inst.truth.overlap_nodes());
            let nmi_value = if z == 0 {
                let truth_labels: Vec<usize> = (0..inst.truth.node_count())
                    .map(|i| inst.truth.memberships(i)[0])
                    .collect();
                let mut node_cfg = *detector;
                node_cfg.rng_seed = mix_seed(stream, 2);
                let p = crate::nodecomm::uelc_nodes(&inst.graph, &node_cfg);
                Some(nmi(p.labels(), &truth_labels)?)
            } else {
                None
            };
            rows.push(SweepPoint {
                param: k,
                instance,
                fvcc: f,
                jaccard: j,
                nmi: nmi_value,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(memberships: Vec<Vec<usize>>) -> NodeCover {
        NodeCover::from_memberships(memberships)
    }

    fn truth(memberships: Vec<Vec<usize>>) -> GroundTruthCover {
        GroundTruthCover::from_memberships(memberships).unwrap()
    }

    #[test]
    fn full_scale_config_shape() {
        let cfg = BknConfig {
            x: 4750,
            y: 4750,
            z: 500,
            expected_degree: 10.0,
            rng_seed: 0,
        };
        assert_eq!(cfg.node_count(), 10_000);
        assert!(cfg.weights().0 > 0.0);
    }

    #[test]
    fn weights_solve_degree_constraint() {
        // Closed form re-derivation: expected multigraph degree of a pure
        // first-community node is t0^2 * (x + z/2 - 1); the -1 excludes the
        // node itself and vanishes at benchmark scale.
        let cfg = BknConfig {
            x: 475,
            y: 475,
            z: 50,
            expected_degree: 12.0,
            rng_seed: 0,
        };
        let (t0, t1) = cfg.weights();
        assert!((t0 * t0 * (475.0 + 25.0) - 12.0).abs() < 1e-12);
        assert!((t1 * t1 * (475.0 + 25.0) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn mean_multigraph_degree_calibrates() {
        // Monte-Carlo oracle over the multiplicities before the collapse.
        let mut total = 0.0;
        let mut nodes = 0usize;
        for seed in 0..50 {
            let cfg = BknConfig {
                x: 475,
                y: 475,
                z: 50,
                expected_degree: 12.0,
                rng_seed: seed,
            };
            let sample = sample_bkn(&cfg).unwrap();
            total += sample.multigraph_degrees.iter().sum::<f64>();
            nodes += sample.multigraph_degrees.len();
        }
        let mean = total / nodes as f64;
        assert!(
            (mean - 12.0).abs() / 12.0 < 0.02,
            "mean multigraph degree {mean}"
        );
    }

    #[test]
    fn generation_is_deterministic_and_sized() {
        let cfg = BknConfig {
            x: 100,
            y: 100,
            z: 20,
            expected_degree: 8.0,
            rng_seed: 42,
        };
        let a = generate_bkn(&cfg).unwrap();
        let b = generate_bkn(&cfg).unwrap();
        assert_eq!(a.graph.node_count(), 220);
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.truth.overlap_nodes().len(), 20);
    }

    #[test]
    fn oversubscribed_config_is_flagged_degenerate() {
        // Three nodes sharing expected degree 2 push pairwise rates near 1;
        // the simple-graph collapse then badly underestimates degrees.
        let cfg = BknConfig {
            x: 2,
            y: 1,
            z: 0,
            expected_degree: 2.0,
            rng_seed: 0,
        };
        let inst = generate_bkn(&cfg).unwrap();
        assert!(inst.degenerate);
        assert!(inst.max_pair_rate > 0.1);
        // Benchmark-scale configs stay comfortably clear of the flag.
        let ok = generate_bkn(&BknConfig {
            x: 475,
            y: 475,
            z: 50,
            expected_degree: 12.0,
            rng_seed: 0,
        })
        .unwrap();
        assert!(!ok.degenerate);
    }

    #[test]
    fn zero_overlap_truth_is_disjoint() {
        let cfg = BknConfig {
            x: 50,
            y: 50,
            z: 0,
            expected_degree: 6.0,
            rng_seed: 1,
        };
        let inst = generate_bkn(&cfg).unwrap();
        assert!(inst.truth.overlap_nodes().is_empty());
    }

    #[test]
    fn pure_cross_pairs_never_connect() {
        let cfg = BknConfig {
            x: 40,
            y: 40,
            z: 0,
            expected_degree: 10.0,
            rng_seed: 3,
        };
        let inst = generate_bkn(&cfg).unwrap();
        for &(u, v) in inst.graph.edges() {
            let cross = u < 40 && v >= 40;
            assert!(!cross, "edge ({u}, {v}) crosses the planted communities");
        }
    }

    #[test]
    fn fvcc_identity_and_swap() {
        let t = truth(vec![vec![0], vec![1], vec![0, 1]]);
        let same = cover(vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(fvcc(&same, &t).unwrap(), 1.0);
        let swapped = cover(vec![vec![1], vec![0], vec![0, 1]]);
        assert_eq!(fvcc(&swapped, &t).unwrap(), 1.0);
    }

    #[test]
    fn fvcc_counts_missed_overlap() {
        // Truth overlap {node 3}; prediction misses it but matches the rest
        // under the best permutation: (n-1)/n.
        let t = truth(vec![vec![0], vec![0], vec![1], vec![0, 1]]);
        let pred = cover(vec![vec![0], vec![0], vec![1], vec![1]]);
        assert_eq!(fvcc(&pred, &t).unwrap(), 0.75);
    }

    #[test]
    fn fvcc_rejects_many_communities() {
        let t = truth(vec![vec![0], vec![1]]);
        let pred = cover(vec![vec![0], vec![1, 2]]);
        assert!(matches!(
            fvcc(&pred, &t),
            Err(BenchError::TooManyCommunities(3))
        ));
    }

    #[test]
    fn jaccard_cases() {
        let s: BTreeSet<usize> = [1, 2, 3].into();
        assert_eq!(jaccard_overlap(&s, &s), 1.0);
        let disjoint: BTreeSet<usize> = [7, 8].into();
        assert_eq!(jaccard_overlap(&s, &disjoint), 0.0);
        let empty = BTreeSet::new();
        assert_eq!(jaccard_overlap(&empty, &empty), 1.0);
        // |S ∩ V| = 1, |S ∪ V| = 2.
        let v: BTreeSet<usize> = [1].into();
        let u: BTreeSet<usize> = [1, 2].into();
        assert_eq!(jaccard_overlap(&v, &u), 0.5);
    }

    #[test]
    fn nmi_identity_is_one() {
        let a = vec![0, 0, 1, 1, 2, 2];
        assert!((nmi(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let relabeled = vec![2, 2, 0, 0, 1, 1];
        assert!((nmi(&a, &relabeled).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nmi_against_single_community_is_zero() {
        let halves = vec![0, 0, 1, 1];
        let single = vec![0, 0, 0, 0];
        assert_eq!(nmi(&halves, &single).unwrap(), 0.0);
    }

    #[test]
    fn nmi_of_independent_split_is_zero() {
        // {AA BB} vs {AB AB}: the confusion matrix is uniform.
        let a = vec![0, 0, 1, 1];
        let b = vec![0, 1, 0, 1];
        assert_eq!(nmi(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn nmi_both_single_community_is_one() {
        let single = vec![0, 0, 0];
        assert_eq!(nmi(&single, &single).unwrap(), 1.0);
    }

    #[test]
    fn nmi_rejects_mismatched_lengths() {
        assert!(matches!(
            nmi(&[0, 1], &[0, 1, 2]),
            Err(BenchError::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn cover_statistics_single_community() {
        use crate::graph::Graph;
        use crate::partition::{uelc, DetectorConfig};
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = uelc(&g, &DetectorConfig::default());
        assert_eq!(p.community_count(), 1);
        let c = crate::partition::node_cover_from_links(&g, &p);
        let stats = cover_statistics(&c, &p);
        assert_eq!(stats.community_sizes, vec![3]);
        assert!(stats.overlap_sizes.is_empty());
        assert_eq!(stats.membership_numbers, vec![1, 1, 1]);
        assert_eq!(stats.community_degrees, vec![0]);
    }

    #[test]
    fn cover_statistics_two_sharing_three() {
        // Synthetic cover: communities 0 and 1 share nodes 0..3.
        let memberships = vec![
            vec![0, 1],
            vec![0, 1],
            vec![0, 1],
            vec![0],
            vec![1],
            vec![1],
        ];
        let c = cover(memberships);
        // Build a matching two-community link partition on a small graph.
        use crate::graph::Graph;
        use crate::partition::{uelc, DetectorConfig};
        let g = Graph::from_edges(
            8,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        let p = uelc(
            &g,
            &DetectorConfig {
                seed_trials: 3,
                ..Default::default()
            },
        );
        if p.community_count() == 2 {
            let stats = cover_statistics(&c, &p);
            assert_eq!(stats.overlap_sizes, vec![3]);
            assert_eq!(stats.community_degrees, vec![1, 1]);
        }
    }

    #[test]
    fn cumulative_distribution_is_p_ge() {
        let values = vec![1, 1, 2, 5];
        let dist = cumulative_ge(&values);
        assert_eq!(dist, vec![(1, 1.0), (2, 0.5), (5, 0.25)]);
    }

    #[test]
    fn metric_self_consistency_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = 12;
            let k = 3;
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            // Random permutation of community ids.
            let perm: Vec<usize> = {
                let mut p: Vec<usize> = (0..k).collect();
                for i in (1..k).rev() {
                    let j = rng.gen_range(0..=i);
                    p.swap(i, j);
                }
                p
            };
            let relabeled: Vec<usize> = labels.iter().map(|&l| perm[l]).collect();
            assert!((nmi(&labels, &relabeled).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
