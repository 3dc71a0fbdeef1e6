//! Link-node-link random walk dynamics: the sparse transition operator over
//! edges and l-step propagation of edge probability distributions.
//!
//! One step of the walk: from the current edge, pick one of its two endpoints
//! uniformly, then a uniform incident edge of that endpoint (the current edge
//! included, giving a positive self-transition). The resulting operator is
//! symmetric and doubly stochastic, and doubles as the weighted adjacency of
//! the line graph: a walk over edges here equals a node walk there.

use thiserror::Error;

use crate::graph::{EdgeId, Graph};

#[derive(Debug, Error)]
pub enum LinkDynError {
    #[error("seed edge {0} out of range (m = {1})")]
    SeedOutOfRange(EdgeId, usize),
    #[error("distribution has {0} entries but operator has {1} edges")]
    DimensionMismatch(usize, usize),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
}

/// Sparse row-stochastic, symmetric transition operator over the edges of a
/// graph.
///
/// Row `e` for `e = (i, j)` holds probability `1/(2k_i)` toward every other
/// edge at `i`, `1/(2k_j)` toward every other edge at `j`, and the
/// self-transition `1/(2k_i) + 1/(2k_j)`; exactly
/// `(k_i - 1) + (k_j - 1) + 1` entries.
#[derive(Debug, Clone)]
pub struct LinkTransition {
    edge_count: usize,
    row_ptr: Vec<usize>,
    /// `(column edge id, probability)`, sorted by column within each row.
    entries: Vec<(EdgeId, f64)>,
}

impl LinkTransition {
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sparse row `e`: `(neighbor edge id, probability)` pairs, self included.
    pub fn row(&self, e: EdgeId) -> &[(EdgeId, f64)] {
        &self.entries[self.row_ptr[e]..self.row_ptr[e + 1]]
    }

    /// `y = x P`, accumulated row by row in edge-id order so the summation
    /// order is fixed (bitwise deterministic).
    #[allow(clippy::needless_range_loop)]
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for e in 0..self.edge_count {
            let xe = x[e];
            if xe == 0.0 {
                continue;
            }
            for &(f, p) in self.row(e) {
                y[f] += xe * p;
            }
        }
    }
}

/// Builds the link-node-link transition operator of `g`.
pub fn build_transition(g: &Graph) -> LinkTransition {
    let m = g.edge_count();
    let mut row_ptr = Vec::with_capacity(m + 1);
    let mut entries = Vec::new();
    row_ptr.push(0);
    for e in 0..m {
        let (i, j) = g.endpoints(e);
        let (ki, kj) = (g.degree(i) as f64, g.degree(j) as f64);
        let start = entries.len();
        for &(_, f) in g.neighbors(i) {
            if f != e {
                entries.push((f, 1.0 / (2.0 * ki)));
            }
        }
        for &(_, f) in g.neighbors(j) {
            if f != e {
                entries.push((f, 1.0 / (2.0 * kj)));
            }
        }
        entries.push((e, 1.0 / (2.0 * ki) + 1.0 / (2.0 * kj)));
        entries[start..].sort_unstable_by_key(|&(f, _)| f);
        row_ptr.push(entries.len());
    }
    LinkTransition {
        edge_count: m,
        row_ptr,
        entries,
    }
}

/// Probability vector over edges together with the number of walk steps that
/// produced it.
#[derive(Debug, Clone)]
pub struct EdgeDistribution {
    probs: Vec<f64>,
    steps: usize,
}

impl EdgeDistribution {
    /// Wraps an explicit probability vector (entries nonnegative, summing to
    /// 1 within 1e-10), e.g. the exact stationary vector `1/m`.
    pub fn from_probs(probs: Vec<f64>, steps: usize) -> Result<Self, LinkDynError> {
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 || probs.iter().any(|&p| p < 0.0) {
            return Err(LinkDynError::NotNormalized(sum));
        }
        Ok(EdgeDistribution { probs, steps })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// One-hot distribution concentrated on `seed`, at step 0.
pub fn unit_distribution(m: usize, seed: EdgeId) -> Result<EdgeDistribution, LinkDynError> {
    if seed >= m {
        return Err(LinkDynError::SeedOutOfRange(seed, m));
    }
    let mut probs = vec![0.0; m];
    probs[seed] = 1.0;
    Ok(EdgeDistribution { probs, steps: 0 })
}

/// Applies `steps` walk steps to `a`, returning the propagated distribution
/// with its step counter advanced.
pub fn propagate(
    t: &LinkTransition,
    a: &EdgeDistribution,
    steps: usize,
) -> Result<EdgeDistribution, LinkDynError> {
    if a.len() != t.edge_count() {
        return Err(LinkDynError::DimensionMismatch(a.len(), t.edge_count()));
    }
    let mut cur = a.probs.clone();
    let mut next = vec![0.0; cur.len()];
    for _ in 0..steps {
        t.apply(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(EdgeDistribution {
        probs: cur,
        steps: a.steps + steps,
    })
}
