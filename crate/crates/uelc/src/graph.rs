//! Core graph representation: canonical edge indexing, edge-list ingestion,
//! induced subgraphs and connected components.
//!
//! Graphs are simple (no self-loops, no parallel edges) and undirected. Every
//! edge is stored once as a pair `(u, v)` with `u < v`, and edge ids are dense
//! `0..m`. Node ids are dense `0..n`; external string labels map onto them
//! through [`NodeLabelMap`].

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

/// Dense node index, `0..n`.
pub type NodeId = usize;
/// Dense edge index, `0..m`.
pub type EdgeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected two whitespace-separated labels, got {tokens} token(s)")]
    MalformedLine { line: usize, tokens: usize },
    #[error("line {line}: self-loop on node {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("input contains no edges")]
    EmptyInput,
    #[error("edge id {0} out of range (m = {1})")]
    InvalidEdgeId(EdgeId, usize),
    #[error("node id {0} out of range (n = {1})")]
    InvalidNodeId(NodeId, usize),
    #[error("empty edge set")]
    EmptyEdgeSet,
    #[error("self-loop edge ({0}, {0})")]
    SelfLoopEdge(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Simple undirected graph with dense node and edge ids.
///
/// Isolated nodes are first-class: `node_count` can exceed the number of
/// nodes touched by edges.
#[derive(Debug, Clone)]
pub struct Graph {
    node_count: usize,
    /// Canonical edge list, `(u, v)` with `u < v`, sorted ascending.
    edges: Vec<(NodeId, NodeId)>,
    /// Per node: `(neighbor, incident edge id)`, sorted by neighbor.
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list over nodes `0..node_count`.
    ///
    /// Pairs may arrive in either orientation; they are canonicalized to
    /// `u < v` and sorted. Self-loops and duplicate edges are errors.
    pub fn from_edges(
        node_count: usize,
        pairs: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoopEdge(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= node_count {
                return Err(GraphError::InvalidNodeId(v, node_count));
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); node_count];
        let mut degrees = vec![0usize; node_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
            degrees[u] += 1;
            degrees[v] += 1;
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Graph {
            node_count,
            edges,
            adjacency,
            degrees,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted ascending; index = edge id.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Endpoints `(u, v)` of an edge, `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.degrees[i]
    }

    /// Neighbors of `i` as `(neighbor, incident edge id)`, sorted by neighbor.
    pub fn neighbors(&self, i: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[i]
    }

    /// Edge id joining `u` and `v`, if present.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&(a, b)).ok()
    }
}

/// Bijection between external string labels and dense node ids.
///
/// Ids are assigned in sorted label order, so the mapping depends only on the
/// label set, not on input ordering.
#[derive(Debug, Clone)]
pub struct NodeLabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeLabelMap {
    fn from_sorted(labels: Vec<String>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        NodeLabelMap { labels, index }
    }

    /// Identity labels: label `"i"` maps to id `i`. Used for generated
    /// graphs whose node ids are already meaningful.
    pub fn numeric(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        NodeLabelMap { labels, index }
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Result of [`load_edge_list`].
#[derive(Debug)]
pub struct EdgeListLoad {
    pub graph: Graph,
    pub labels: NodeLabelMap,
    /// Number of input lines dropped because they repeated an earlier edge
    /// (in either orientation).
    pub duplicates_collapsed: usize,
}

/// Parses an edge-list text stream: one edge per line as
/// `<label_u><ws><label_v>`, `#` comment lines and blank lines ignored.
///
/// Duplicate edges are collapsed (counted in the result); self-loops and
/// malformed lines are hard errors, as is an input with no edges at all.
pub fn load_edge_list(reader: impl BufRead) -> Result<EdgeListLoad, GraphError> {
    let mut label_pairs: Vec<(String, String)> = Vec::new();
    for (ix, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::MalformedLine {
                line: ix + 1,
                tokens: tokens.len(),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(GraphError::SelfLoop {
                line: ix + 1,
                label: tokens[0].to_string(),
            });
        }
        label_pairs.push((tokens[0].to_string(), tokens[1].to_string()));
    }
    if label_pairs.is_empty() {
        return Err(GraphError::EmptyInput);
    }

    let mut sorted_labels: Vec<String> = label_pairs
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    sorted_labels.sort_unstable();
    sorted_labels.dedup();
    let labels = NodeLabelMap::from_sorted(sorted_labels);

    let mut id_pairs: Vec<(NodeId, NodeId)> = label_pairs
        .iter()
        .map(|(a, b)| {
            let (ia, ib) = (labels.id(a).unwrap(), labels.id(b).unwrap());
            if ia < ib {
                (ia, ib)
            } else {
                (ib, ia)
            }
        })
        .collect();
    let raw = id_pairs.len();
    id_pairs.sort_unstable();
    id_pairs.dedup();
    let duplicates_collapsed = raw - id_pairs.len();

    let graph = Graph::from_edges(labels.len(), id_pairs)?;
    Ok(EdgeListLoad {
        graph,
        labels,
        duplicates_collapsed,
    })
}

/// Writes the canonical edge list back out, one `<label_u> <label_v>` line
/// per edge in edge-id order.
pub fn write_edge_list(
    graph: &Graph,
    labels: &NodeLabelMap,
    mut writer: impl Write,
) -> io::Result<()> {
    for &(u, v) in graph.edges() {
        writeln!(writer, "{} {}", labels.label(u), labels.label(v))?;
    }
    Ok(())
}

/// A graph isolated from a parent by selecting a set of parent edges.
///
/// The local node set is exactly the set of endpoints of the selected edges;
/// `node_back`/`edge_back` translate local ids back to parent ids.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub node_back: Vec<NodeId>,
    pub edge_back: Vec<EdgeId>,
}

/// Isolates the subnetwork spanned by `edge_ids` of `g`.
pub fn induced_by_edges(g: &Graph, edge_ids: &[EdgeId]) -> Result<Subgraph, GraphError> {
    if edge_ids.is_empty() {
        return Err(GraphError::EmptyEdgeSet);
    }
    let mut ids: Vec<EdgeId> = edge_ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&e| e >= g.edge_count()) {
        return Err(GraphError::InvalidEdgeId(bad, g.edge_count()));
    }

    let mut node_back: Vec<NodeId> = ids
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    node_back.sort_unstable();
    node_back.dedup();
    let local_of: HashMap<NodeId, NodeId> = node_back
        .iter()
        .enumerate()
        .map(|(local, &parent)| (parent, local))
        .collect();

    let pairs: Vec<(NodeId, NodeId)> = ids
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            (local_of[&u], local_of[&v])
        })
        .collect();
    let graph = Graph::from_edges(node_back.len(), pairs)?;

    // Local edge ids follow the sorted local pairs; recover the parent id of
    // each local edge through the endpoint back-maps.
    let parent_of_pair: HashMap<(NodeId, NodeId), EdgeId> = ids
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            ((u, v), e)
        })
        .collect();
    let edge_back: Vec<EdgeId> = graph
        .edges()
        .iter()
        .map(|&(lu, lv)| {
            let (pu, pv) = (node_back[lu], node_back[lv]);
            let key = if pu < pv { (pu, pv) } else { (pv, pu) };
            parent_of_pair[&key]
        })
        .collect();

    Ok(Subgraph {
        graph,
        node_back,
        edge_back,
    })
}

/// Edge partition of a graph by connected component, plus the nodes touched
/// by no edge at all.
#[derive(Debug, Clone)]
pub struct Components {
    /// One sorted edge-id set per component, ordered by smallest member node.
    pub edge_sets: Vec<Vec<EdgeId>>,
    pub isolated_nodes: Vec<NodeId>,
}

/// Splits the edges of `g` into connected components (detection runs per
/// component: a walk assigns probability zero outside its own component).
pub fn connected_components(g: &Graph) -> Components {
    let mut component = vec![usize::MAX; g.node_count()];
    let mut next_id = 0usize;
    for start in 0..g.node_count() {
        if component[start] != usize::MAX || g.degree(start) == 0 {
            continue;
        }
        let id = next_id;
        next_id += 1;
        component[start] = id;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, _) in g.neighbors(u) {
                if component[v] == usize::MAX {
                    component[v] = id;
                    stack.push(v);
                }
            }
        }
    }

    let mut edge_sets = vec![Vec::new(); next_id];
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        edge_sets[component[u]].push(e);
    }
    let isolated_nodes = (0..g.node_count()).filter(|&i| g.degree(i) == 0).collect();
    Components {
        edge_sets,
        isolated_nodes,
    }
}

/// Connected components of an edge subset of `g`, each returned as a sorted
/// edge-id vector; components ordered by smallest member edge.
pub fn edge_set_components(g: &Graph, edge_ids: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let mut parent: HashMap<NodeId, NodeId> = HashMap::new();
    fn find(parent: &mut HashMap<NodeId, NodeId>, mut x: NodeId) -> NodeId {
        while parent[&x] != x {
            let up = parent[&parent[&x]];
            parent.insert(x, up);
            x = up;
        }
        x
    }
    for &e in edge_ids {
        let (u, v) = g.endpoints(e);
        parent.entry(u).or_insert(u);
        parent.entry(v).or_insert(v);
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            let (lo, hi) = (ru.min(rv), ru.max(rv));
            parent.insert(hi, lo);
        }
    }
    let mut sorted = edge_ids.to_vec();
    sorted.sort_unstable();
    let mut groups: HashMap<NodeId, Vec<EdgeId>> = HashMap::new();
    for e in sorted {
        let (u, _) = g.endpoints(e);
        let root = find(&mut parent, u);
        groups.entry(root).or_default().push(e);
    }
    let mut out: Vec<Vec<EdgeId>> = groups.into_values().collect();
    out.sort_unstable_by_key(|set| set[0]);
    out
}
