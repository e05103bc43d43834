//! Prim's algorithm with on-demand distance evaluation.
//!
//! Points mode grows the tree with a linear frontier scan: per out-vertex
//! we keep the best known distance to the fragment and the fragment
//! endpoint achieving it, which is O(n) memory on the complete distance
//! graph. Graph mode uses a binary heap over frontier edges.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ingest::{Dataset, DissimilaritySource, EdgeWeightedGraph};
use crate::metric::Metric;
use crate::scalar::Scalar;

/// MST edge recorded when a vertex joined the growing tree: the inside
/// endpoint and the edge weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttachEdge<T> {
    pub parent: usize,
    pub weight: T,
}

/// Vertex order and attach edges produced by one Prim run.
///
/// Positions are 1-based: `order[k-1]` is the vertex at position `k` and
/// the seed sits at position 1. For `k >= 2`, `attach[k-2]` is the MST
/// edge that joined the vertex at position `k`; its parent always sits at
/// an earlier position, so the edge added at step `k` has edge position
/// `k` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimResult<T> {
    seed: usize,
    order: Vec<usize>,
    attach: Vec<AttachEdge<T>>,
}

impl<T: Scalar> PrimResult<T> {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    /// The Prim order: `order()[k-1]` is the vertex at position `k`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Attach edges for positions `2..=n`.
    pub fn attach(&self) -> &[AttachEdge<T>] {
        &self.attach
    }

    /// MST edges as (parent, child, weight), in attach order.
    pub fn mst_edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.attach
            .iter()
            .zip(&self.order[1..])
            .map(|(edge, &child)| (edge.parent, child, edge.weight))
    }

    /// Total MST weight.
    ///
    /// The attach weights are summed in ascending order so that any two
    /// minimum spanning trees of the same input (which share the same
    /// weight multiset) produce the bitwise-identical total.
    pub fn total_weight(&self) -> T {
        let mut weights: Vec<T> = self.attach.iter().map(|e| e.weight).collect();
        weights.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
        weights.into_iter().fold(T::zero(), |acc, w| acc + w)
    }
}

/// Run Prim's algorithm from `seed` and record the vertex order together
/// with each attaching edge.
///
/// Each step adds a minimum-weight frontier edge. Among frontier
/// candidates with equal (bitwise) weights the one whose outside endpoint
/// has the smallest original vertex id is taken, so the result is a pure,
/// deterministic function of the input and the seed.
pub fn prim_mst<T: Scalar>(src: &DissimilaritySource<T>, seed: usize) -> Result<PrimResult<T>> {
    let n = src.n();
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if seed >= n {
        return Err(Error::VertexOutOfRange { id: seed, n });
    }
    match src {
        DissimilaritySource::Points { dataset, metric } => Ok(prim_dense(dataset, *metric, seed)),
        DissimilaritySource::Graph(graph) => prim_sparse(graph, seed),
    }
}

fn prim_dense<T: Scalar>(dataset: &Dataset<T>, metric: Metric, seed: usize) -> PrimResult<T> {
    let n = dataset.n();
    let mut order = Vec::with_capacity(n);
    let mut attach = Vec::with_capacity(n.saturating_sub(1));
    let mut best = vec![T::infinity(); n];
    let mut best_parent = vec![usize::MAX; n];
    let mut joined = vec![false; n];

    order.push(seed);
    joined[seed] = true;
    let mut latest = seed;

    for _ in 1..n {
        let latest_row = dataset.row(latest);
        let mut pick = usize::MAX;
        let mut pick_weight = T::infinity();
        for v in 0..n {
            if joined[v] {
                continue;
            }
            let w = metric.eval(latest_row, dataset.row(v));
            // Strict improvement keeps the earliest parent on weight ties.
            if w < best[v] {
                best[v] = w;
                best_parent[v] = latest;
            }
            // Strict comparison picks the smallest vertex id on ties.
            if best[v] < pick_weight {
                pick = v;
                pick_weight = best[v];
            }
        }
        joined[pick] = true;
        order.push(pick);
        attach.push(AttachEdge {
            parent: best_parent[pick],
            weight: pick_weight,
        });
        latest = pick;
    }

    PrimResult { seed, order, attach }
}

/// Frontier entry ordered by (weight, vertex id) ascending, so the heap
/// realizes the same tie rule as the dense scan.
struct FrontierEntry<T> {
    weight: T,
    vertex: usize,
}

impl<T: Scalar> PartialEq for FrontierEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.vertex == other.vertex
    }
}

impl<T: Scalar> Eq for FrontierEntry<T> {}

impl<T: Scalar> Ord for FrontierEntry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .partial_cmp(&other.weight)
            .expect("finite weights")
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl<T: Scalar> PartialOrd for FrontierEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn prim_sparse<T: Scalar>(graph: &EdgeWeightedGraph<T>, seed: usize) -> Result<PrimResult<T>> {
    let n = graph.n();
    let mut order = Vec::with_capacity(n);
    let mut attach = Vec::with_capacity(n.saturating_sub(1));
    let mut best = vec![T::infinity(); n];
    let mut best_parent = vec![usize::MAX; n];
    let mut joined = vec![false; n];
    // Min-heap with lazy deletion; stale entries are skipped when popped.
    let mut heap: BinaryHeap<std::cmp::Reverse<FrontierEntry<T>>> = BinaryHeap::new();

    let join = |v: usize,
                    order: &mut Vec<usize>,
                    joined: &mut Vec<bool>,
                    best: &mut Vec<T>,
                    best_parent: &mut Vec<usize>,
                    heap: &mut BinaryHeap<std::cmp::Reverse<FrontierEntry<T>>>| {
        joined[v] = true;
        order.push(v);
        for &(u, w) in graph.neighbors(v) {
            if !joined[u] && w < best[u] {
                best[u] = w;
                best_parent[u] = v;
                heap.push(std::cmp::Reverse(FrontierEntry { weight: w, vertex: u }));
            }
        }
    };

    join(seed, &mut order, &mut joined, &mut best, &mut best_parent, &mut heap);

    while order.len() < n {
        let Some(std::cmp::Reverse(entry)) = heap.pop() else {
            break;
        };
        let v = entry.vertex;
        if joined[v] {
            continue;
        }
        attach.push(AttachEdge {
            parent: best_parent[v],
            weight: entry.weight,
        });
        join(v, &mut order, &mut joined, &mut best, &mut best_parent, &mut heap);
    }

    if order.len() < n {
        let unreached: Vec<usize> = (0..n).filter(|&v| !joined[v]).collect();
        return Err(Error::Disconnected { unreached });
    }
    Ok(PrimResult { seed, order, attach })
}
