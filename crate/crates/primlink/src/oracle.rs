//! Brute-force reference implementations used by the test suites: naive
//! agglomerative single linkage over a full distance matrix, Kruskal MST
//! weight, and component computation by traversal.
//!
//! These are deliberately simple quadratic-to-cubic algorithms and exist
//! solely to cross-check the main pipeline at small n (tests cap at 200).

use crate::dendrogram::{MergeRow, MergeTable};
use crate::error::{Error, Result};
use crate::ingest::Dataset;
use crate::metric::Metric;
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

/// Dense symmetric distance matrix with a zero diagonal. This is exactly
/// the structure the main pipeline avoids; the oracle embraces it.
#[derive(Debug, Clone)]
pub struct DistanceMatrix<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Fill from a symmetric pair function; each unordered pair is
    /// evaluated once and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut values = vec![T::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        DistanceMatrix { n, values }
    }

    pub fn from_points(dataset: &Dataset<T>, metric: Metric) -> Self {
        Self::from_fn(dataset.n(), |i, j| metric.eval(dataset.row(i), dataset.row(j)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.n + j]
    }
}

/// Naive agglomerative single linkage: repeatedly merge the two clusters
/// at minimum inter-cluster distance, where that distance is the minimum
/// pairwise distance across the two clusters.
///
/// Ties resolve to the pair whose clusters have the smallest minimum
/// original ids, first cluster then second. This rule is independent of
/// the main pipeline's; comparisons against it must be tie-robust.
pub fn naive_single_linkage<T: Scalar>(matrix: &DistanceMatrix<T>) -> MergeTable<T> {
    let n = matrix.n();

    struct Cluster {
        members: Vec<usize>,
        table_id: usize,
        min_id: usize,
    }
    let mut clusters: Vec<Cluster> = (0..n)
        .map(|v| Cluster {
            members: vec![v],
            table_id: v,
            min_id: v,
        })
        .collect();

    struct Candidate<T> {
        dist: T,
        key: (usize, usize),
        pair: (usize, usize),
    }

    let mut rows = Vec::with_capacity(n.saturating_sub(1));
    for round in 0..n.saturating_sub(1) {
        let mut best: Option<Candidate<T>> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let mut dist = T::infinity();
                for &x in &clusters[a].members {
                    for &y in &clusters[b].members {
                        let d = matrix.get(x, y);
                        if d < dist {
                            dist = d;
                        }
                    }
                }
                let (ka, kb) = (clusters[a].min_id, clusters[b].min_id);
                let key = (ka.min(kb), ka.max(kb));
                let better = match &best {
                    None => true,
                    Some(c) => dist < c.dist || (dist == c.dist && key < c.key),
                };
                if better {
                    best = Some(Candidate {
                        dist,
                        key,
                        pair: (a, b),
                    });
                }
            }
        }
        let best = best.expect("at least two clusters");
        let (height, (a, b)) = (best.dist, best.pair);
        // Order the row so `left` is the cluster with the smaller min id.
        let (first, second) = if clusters[a].min_id <= clusters[b].min_id {
            (a, b)
        } else {
            (b, a)
        };
        rows.push(MergeRow {
            left: clusters[first].table_id,
            right: clusters[second].table_id,
            height,
            size: clusters[a].members.len() + clusters[b].members.len(),
        });
        let absorbed = clusters.swap_remove(b.max(a));
        let keep = &mut clusters[b.min(a)];
        keep.members.extend(absorbed.members);
        keep.min_id = keep.min_id.min(absorbed.min_id);
        keep.table_id = n + round;
    }
    MergeTable::new(n, rows)
}

/// Exact MST total weight by sort plus union-find. Weights accumulate in
/// ascending order, giving a canonical sum.
pub fn kruskal_weight_edges<T: Scalar>(n: usize, edges: &[(usize, usize, T)]) -> Result<T> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let mut sorted: Vec<&(usize, usize, T)> = edges.iter().collect();
    sorted.sort_by(|a, b| a.2.partial_cmp(&b.2).expect("finite weights"));
    let mut uf = UnionFind::new(n);
    let mut total = T::zero();
    let mut joined = 0usize;
    for &&(u, v, w) in &sorted {
        if uf.union(u, v) {
            total = total + w;
            joined += 1;
        }
    }
    if joined + 1 < n {
        let root0 = uf.find(0);
        let unreached: Vec<usize> = (1..n).filter(|&v| uf.find(v) != root0).collect();
        return Err(Error::Disconnected { unreached });
    }
    Ok(total)
}

pub fn kruskal_weight_matrix<T: Scalar>(matrix: &DistanceMatrix<T>) -> Result<T> {
    let n = matrix.n();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, matrix.get(i, j)));
        }
    }
    kruskal_weight_edges(n, &edges)
}

/// Connected components of a tree after removing a subset of its edges,
/// computed by traversal. Each vertex is labeled with the smallest
/// original id in its component.
pub fn components_after_removal(
    n: usize,
    tree_edges: &[(usize, usize)],
    removed: &[(usize, usize)],
) -> Result<Vec<usize>> {
    if tree_edges.len() + 1 != n {
        return Err(Error::NotATree {
            reason: format!("{} edges for {} vertices", tree_edges.len(), n),
        });
    }
    let mut uf = UnionFind::new(n);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in tree_edges {
        if u >= n || v >= n {
            return Err(Error::NotATree {
                reason: format!("edge ({u}, {v}) out of range"),
            });
        }
        if !uf.union(u, v) {
            return Err(Error::NotATree {
                reason: format!("cycle through edge ({u}, {v})"),
            });
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }

    let removed: std::collections::HashSet<(usize, usize)> = removed
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();

    let mut labels = vec![usize::MAX; n];
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        // Ascending start order makes `start` the smallest id in its
        // component.
        let mut stack = vec![start];
        labels[start] = start;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if labels[v] == usize::MAX && !removed.contains(&(u.min(v), u.max(v))) {
                    labels[v] = start;
                    stack.push(v);
                }
            }
        }
    }
    Ok(labels)
}
