//! Independent oracles and fixtures shared by the integration suites.
//!
//! Everything here is deliberately computed a different way than the library
//! does it: dense matrices straight from the adjacency definition, matrix
//! powers for propagation, Jacobi rotations for eigenvalues, and plain BFS
//! for connectivity.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::io::Cursor;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uelc::graph::{load_edge_list, EdgeListLoad, Graph};

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load_data(name: &str) -> EdgeListLoad {
    let text = std::fs::read_to_string(data_file(name)).unwrap();
    load_edge_list(Cursor::new(text)).unwrap()
}

/// Dense edge-to-edge transition matrix evaluated directly from the graph's
/// adjacency: self entry `1/2k_i + 1/2k_j`, shared-endpoint entry `1/2k_s`,
/// zero otherwise.
pub fn dense_transition(g: &Graph) -> Vec<Vec<f64>> {
    let m = g.edge_count();
    let mut p = vec![vec![0.0; m]; m];
    for e in 0..m {
        let (i, j) = g.endpoints(e);
        for f in 0..m {
            let (a, b) = g.endpoints(f);
            if e == f {
                p[e][f] = 1.0 / (2.0 * g.degree(i) as f64) + 1.0 / (2.0 * g.degree(j) as f64);
            } else {
                let shared = [i, j]
                    .iter()
                    .find(|&&s| s == a || s == b)
                    .copied();
                if let Some(s) = shared {
                    p[e][f] = 1.0 / (2.0 * g.degree(s) as f64);
                }
            }
        }
    }
    p
}

/// `alpha * P^steps` by repeated dense vector-matrix products.
pub fn dense_propagate(p: &[Vec<f64>], alpha: &[f64], steps: usize) -> Vec<f64> {
    let m = alpha.len();
    let mut cur = alpha.to_vec();
    for _ in 0..steps {
        let mut next = vec![0.0; m];
        for e in 0..m {
            let xe = cur[e];
            if xe == 0.0 {
                continue;
            }
            for f in 0..m {
                next[f] += xe * p[e][f];
            }
        }
        cur = next;
    }
    cur
}

/// Dense Markov generator `M = I - P` of a transition matrix.
pub fn dense_generator(p: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = p.len();
    let mut out = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            out[i][j] = if i == j { 1.0 - p[i][j] } else { -p[i][j] };
        }
    }
    out
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Random connected simple graph: a random attachment tree plus `extra`
/// random non-duplicate edges.
pub fn random_connected_graph(n: usize, extra: usize, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 2);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        pairs.push((parent, i));
    }
    let mut have: std::collections::HashSet<(usize, usize)> = pairs.iter().copied().collect();
    let mut attempts = 0;
    while have.len() < (n - 1) + extra && attempts < extra * 20 + 100 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if have.insert(key) {
            pairs.push(key);
        }
    }
    Graph::from_edges(n, pairs).unwrap()
}

/// Random tree on `n` nodes (uniform random attachment).
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(n, pairs).unwrap()
}

/// Connected components of a graph's nodes by plain BFS; sorted node lists,
/// ordered by smallest member.
pub fn bfs_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        let mut comp = vec![start];
        while let Some(u) = queue.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Node-cover overlap of the first accepted bipartition in a link
/// partition's recursion tree, or `None` when the root never split.
pub fn first_split_overlap(
    p: &uelc::partition::LinkPartition,
    g: &Graph,
) -> Option<std::collections::BTreeSet<usize>> {
    let root = p.tree().first()?;
    if root.children.len() != 2 {
        return None;
    }
    let side_nodes = |side_ix: usize| -> std::collections::BTreeSet<usize> {
        let mut stack = vec![side_ix];
        let mut nodes = std::collections::BTreeSet::new();
        while let Some(ix) = stack.pop() {
            let n = &p.tree()[ix];
            if let Some(label) = n.community {
                for e in p.community_edges(label) {
                    let (u, v) = g.endpoints(e);
                    nodes.insert(u);
                    nodes.insert(v);
                }
            }
            stack.extend(&n.children);
        }
        nodes
    };
    let a = side_nodes(root.children[0]);
    let b = side_nodes(root.children[1]);
    Some(a.intersection(&b).copied().collect())
}

/// Mutual-information NMI computed straight from the probability
/// definitions, as an oracle for the confusion-matrix form.
pub fn brute_force_nmi(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let ka = a.iter().max().unwrap() + 1;
    let kb = b.iter().max().unwrap() + 1;
    let mut joint = vec![vec![0.0; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        joint[x][y] += 1.0 / n;
    }
    let pa: Vec<f64> = (0..ka).map(|i| joint[i].iter().sum()).collect();
    let pb: Vec<f64> = (0..kb).map(|j| (0..ka).map(|i| joint[i][j]).sum()).collect();
    let mut mi = 0.0;
    for i in 0..ka {
        for j in 0..kb {
            if joint[i][j] > 0.0 {
                mi += joint[i][j] * (joint[i][j] / (pa[i] * pb[j])).ln();
            }
        }
    }
    let h = |p: &[f64]| -> f64 { p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum() };
    let (ha, hb) = (h(&pa), h(&pb));
    if ha + hb == 0.0 {
        return 1.0;
    }
    (2.0 * mi / (ha + hb)).clamp(0.0, 1.0)
}
