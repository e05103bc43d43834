//! Dendrogram construction from a Prim run, flat-partition extraction, and
//! merge-table export.
//!
//! Node membership is never stored as an explicit vertex set. Every node
//! covers a contiguous interval [lo, hi] of 1-based Prim positions, and
//! breaking the attach edge with the lexicographically largest
//! (weight, position) key splits an interval into two intervals at that
//! position. Construction runs bottom-up instead: positions are merged in
//! ascending (weight, position) order, which produces the same tree with a
//! single sort and O(1) bookkeeping per merge.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prim::PrimResult;
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

/// Merge data carried by an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergeInfo<T> {
    /// Merge distance: the weight of the broken attach edge.
    pub height: T,
    /// Position of the broken edge; the left child covers [lo, split_pos-1]
    /// and the right child covers [split_pos, hi].
    pub split_pos: usize,
    pub left: usize,
    pub right: usize,
}

/// Dendrogram node: a contiguous range of Prim positions, plus merge data
/// when the node is internal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DendroNode<T> {
    lo: usize,
    hi: usize,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    merge: Option<MergeInfo<T>>,
}

impl<T: Copy> DendroNode<T> {
    /// Lowest Prim position covered, 1-based inclusive.
    pub fn lo(&self) -> usize {
        self.lo
    }

    /// Highest Prim position covered, 1-based inclusive.
    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Number of Prim positions (members) covered.
    pub fn size(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_leaf(&self) -> bool {
        self.merge.is_none()
    }

    pub fn merge(&self) -> Option<&MergeInfo<T>> {
        self.merge.as_ref()
    }

    pub fn height(&self) -> Option<T> {
        self.merge.map(|m| m.height)
    }

    pub fn split_pos(&self) -> Option<usize> {
        self.merge.map(|m| m.split_pos)
    }

    pub fn children(&self) -> Option<(usize, usize)> {
        self.merge.map(|m| (m.left, m.right))
    }
}

/// Single-linkage dendrogram over the Prim order.
///
/// Nodes `0..n-1` are the leaves (node `p-1` is position `p`); internal
/// nodes follow in construction order, ascending by (height, split
/// position). The root is the last node and covers [1, n]. Immutable after
/// construction and safe for concurrent reads.
#[derive(Debug, Clone)]
pub struct Dendrogram<T> {
    n: usize,
    order: Vec<usize>,
    attach_weights: Vec<T>,
    nodes: Vec<DendroNode<T>>,
    root: usize,
}

impl<T: Scalar> Dendrogram<T> {
    /// Build the dendrogram from a Prim run.
    ///
    /// Only the attach-weight sequence indexed by position is consulted; no
    /// adjacency structure is needed. Cost is dominated by one sort of the
    /// n-1 positions.
    pub fn build(prim: &PrimResult<T>) -> Self {
        let n = prim.n();
        let order = prim.order().to_vec();
        let attach_weights: Vec<T> = prim.attach().iter().map(|e| e.weight).collect();

        let mut nodes: Vec<DendroNode<T>> = Vec::with_capacity(2 * n - 1);
        for p in 1..=n {
            nodes.push(DendroNode {
                lo: p,
                hi: p,
                merge: None,
            });
        }
        if n == 1 {
            return Dendrogram {
                n,
                order,
                attach_weights,
                nodes,
                root: 0,
            };
        }

        let mut by_key: Vec<usize> = (2..=n).collect();
        by_key.sort_by(|&a, &b| {
            attach_weights[a - 2]
                .partial_cmp(&attach_weights[b - 2])
                .expect("finite weights")
                .then(a.cmp(&b))
        });

        // Live-interval bookkeeping, all indexed by position - 1:
        // for an interval [a, b], start_at_end[b-1] = a, end_at_start[a-1] = b,
        // and node_at_start[a-1] is its current node id. When position s is
        // processed, the interval containing s-1 ends exactly at s-1 and the
        // one containing s starts exactly at s, because every earlier-keyed
        // position inside either interval has already been merged.
        let mut start_at_end: Vec<usize> = (1..=n).collect();
        let mut end_at_start: Vec<usize> = (1..=n).collect();
        let mut node_at_start: Vec<usize> = (0..n).collect();

        for &s in &by_key {
            let a = start_at_end[s - 2];
            let b = end_at_start[s - 1];
            let left = node_at_start[a - 1];
            let right = node_at_start[s - 1];
            let id = nodes.len();
            nodes.push(DendroNode {
                lo: a,
                hi: b,
                merge: Some(MergeInfo {
                    height: attach_weights[s - 2],
                    split_pos: s,
                    left,
                    right,
                }),
            });
            end_at_start[a - 1] = b;
            start_at_end[b - 1] = a;
            node_at_start[a - 1] = id;
        }

        let root = nodes.len() - 1;
        Dendrogram {
            n,
            order,
            attach_weights,
            nodes,
            root,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Node id of the root; its range is [1, n].
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[DendroNode<T>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &DendroNode<T> {
        &self.nodes[id]
    }

    /// The Prim order the ranges refer to.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Original vertex ids of a node's members, in Prim-position order.
    pub fn members(&self, node: usize) -> &[usize] {
        let node = &self.nodes[node];
        &self.order[node.lo - 1..node.hi]
    }

    /// Flat partition at a distance threshold.
    ///
    /// Clusters are the connected components of the MST after removing
    /// every edge of weight >= `t`; equivalently, the maximal dendrogram
    /// nodes all of whose merges happened below `t`. Cluster ids increase
    /// with each cluster's lowest Prim position.
    pub fn cut_threshold(&self, t: T) -> Partition {
        self.partition_from_breaks(|weight, _pos| weight >= t)
    }

    /// Flat partition with exactly `k` clusters, undoing the last `k-1`
    /// merges, i.e. breaking edges in descending (weight, position) order.
    pub fn cut_k(&self, k: usize) -> Result<Partition> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidClusterCount { k, n: self.n });
        }
        let mut broken = vec![false; self.n + 1];
        // Internal nodes were created in ascending key order, so the last
        // k-1 of them are exactly the first k-1 top-down splits.
        for node in self.nodes.iter().skip(self.nodes.len() - (k - 1)) {
            broken[node.merge.expect("internal node").split_pos] = true;
        }
        Ok(self.partition_from_breaks(|_weight, pos| broken[pos]))
    }

    fn partition_from_breaks(&self, is_broken: impl Fn(T, usize) -> bool) -> Partition {
        let mut labels = vec![0usize; self.n];
        let mut cluster = 0usize;
        labels[self.order[0]] = 0;
        for p in 2..=self.n {
            if is_broken(self.attach_weights[p - 2], p) {
                cluster += 1;
            }
            labels[self.order[p - 1]] = cluster;
        }
        Partition {
            labels,
            k: cluster + 1,
        }
    }

    /// Stepwise merge table: one row per internal node, ascending by
    /// (height, split position). Leaves carry their original vertex id;
    /// the node of row `i` gets id `n + i`.
    pub fn merge_table(&self) -> MergeTable<T> {
        let table_id = |node: usize| {
            if node < self.n {
                self.order[node]
            } else {
                node
            }
        };
        let rows = self
            .nodes
            .iter()
            .skip(self.n)
            .map(|node| {
                let m = node.merge.expect("internal node");
                MergeRow {
                    left: table_id(m.left),
                    right: table_id(m.right),
                    height: m.height,
                    size: node.size(),
                }
            })
            .collect();
        MergeTable { n: self.n, rows }
    }
}

impl<T: Scalar + Serialize> Dendrogram<T> {
    /// JSON debug dump of the node array: ranges, heights, split positions,
    /// and child links, plus the order mapping positions to original ids.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump<'a, T> {
            n: usize,
            root: usize,
            order: &'a [usize],
            nodes: &'a [DendroNode<T>],
        }
        serde_json::to_string(&Dump {
            n: self.n,
            root: self.root,
            order: &self.order,
            nodes: &self.nodes,
        })
        .expect("dendrogram serializes")
    }
}

/// Cluster label per original vertex id.
///
/// Labels are `0..k-1` and each occurs at least once. Every cluster is a
/// contiguous interval of Prim positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    /// `labels()[v]` is the cluster of original vertex `v`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    /// Labels CSV: "id,label" rows in original-id order, or "name,label"
    /// when row labels are supplied.
    pub fn write_csv<W: Write>(&self, w: &mut W, row_labels: Option<&[String]>) -> Result<()> {
        if let Some(names) = row_labels {
            if names.len() != self.labels.len() {
                return Err(Error::LabelLengthMismatch {
                    expected: self.labels.len(),
                    found: names.len(),
                });
            }
        }
        let io_err = |source: std::io::Error| Error::Io {
            path: "<labels>".into(),
            source,
        };
        match row_labels {
            Some(names) => {
                writeln!(w, "name,label").map_err(io_err)?;
                for (name, label) in names.iter().zip(&self.labels) {
                    writeln!(w, "{name},{label}").map_err(io_err)?;
                }
            }
            None => {
                writeln!(w, "id,label").map_err(io_err)?;
                for (id, label) in self.labels.iter().enumerate() {
                    writeln!(w, "{id},{label}").map_err(io_err)?;
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self, row_labels: Option<&[String]>) -> Result<String> {
        let mut out = Vec::new();
        self.write_csv(&mut out, row_labels)?;
        Ok(String::from_utf8(out).expect("utf-8 output"))
    }
}

/// One merge: the two cluster ids joined, the merge distance, and the size
/// of the resulting cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeRow<T> {
    pub left: usize,
    pub right: usize,
    pub height: T,
    pub size: usize,
}

/// Stepwise merge table with n-1 rows. Leaves are ids `0..n-1` (original
/// vertex ids); the cluster made by row `i` is id `n + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTable<T> {
    n: usize,
    rows: Vec<MergeRow<T>>,
}

impl<T: Scalar> MergeTable<T> {
    pub fn new(n: usize, rows: Vec<MergeRow<T>>) -> Self {
        MergeTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[MergeRow<T>] {
        &self.rows
    }

    /// CSV with header "left,right,height,size". Floats print in their
    /// shortest round-trip form.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "left,right,height,size")?;
        for row in &self.rows {
            writeln!(w, "{},{},{},{}", row.left, row.right, row.height, row.size)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("write to vec");
        String::from_utf8(out).expect("utf-8 output")
    }

    /// Flat labels after applying every merge with height < `t`,
    /// canonicalized by first occurrence in original-id order.
    pub fn labels_at_threshold(&self, t: T) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n + self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.height < t {
                uf.union(row.left, self.n + i);
                uf.union(row.right, self.n + i);
            }
        }
        let raw: Vec<usize> = (0..self.n).map(|v| uf.find(v)).collect();
        canonical_labels(&raw)
    }
}

/// Renumber arbitrary labels to `0..k-1` in order of first occurrence, so
/// two labelings can be compared directly.
pub fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(raw.len());
    for &label in raw {
        let next = remap.len();
        out.push(*remap.entry(label).or_insert(next));
    }
    out
}
