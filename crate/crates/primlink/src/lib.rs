//! Single-linkage hierarchical clustering built on Prim's algorithm.
//!
//! The pipeline loads points or an explicit edge-weighted graph
//! ([`ingest`]), runs Prim's algorithm with on-demand distance evaluation
//! ([`prim`]), and turns the resulting vertex order and attach-weight
//! sequence into a dendrogram whose node memberships are contiguous
//! intervals of that order ([`dendrogram`]). The full interpoint distance
//! matrix is never materialized: points mode needs O(n) working memory
//! beyond the coordinates themselves.
//!
//! Flat partitions come from cutting the dendrogram at a height or at a
//! cluster count, and trees export as merge tables, Newick text, or a JSON
//! node dump ([`newick`], [`dendrogram`]).
//!
//! Core types are generic over the weight scalar via [`Scalar`] (`f32` or
//! `f64`); `*F64` and `*F32` aliases cover the common instantiations.
//!
//! ```
//! use primlink::{prim_mst, Dataset, Dendrogram, DissimilaritySource, Metric};
//!
//! let rows = vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]];
//! let dataset = Dataset::new(rows, None).unwrap();
//! let source = DissimilaritySource::points(dataset, Metric::Euclidean);
//! let prim = prim_mst(&source, 0).unwrap();
//! let dendrogram = Dendrogram::build(&prim);
//! let partition = dendrogram.cut_threshold(3.0);
//! assert_eq!(partition.labels(), &[0, 0, 0, 1]);
//! ```

pub mod bench;
pub mod dendrogram;
pub mod error;
pub mod ingest;
pub mod memtrack;
pub mod metric;
pub mod newick;
pub mod oracle;
pub mod prim;
mod scalar;
mod union_find;

pub use crate::dendrogram::{
    canonical_labels, DendroNode, Dendrogram, MergeInfo, MergeRow, MergeTable, Partition,
};
pub use crate::error::{Error, Result};
pub use crate::ingest::{
    load_edge_graph, load_points, Dataset, DissimilaritySource, EdgeWeightedGraph, LabelColumn,
};
pub use crate::metric::Metric;
pub use crate::newick::{parse_newick, to_newick, NewickNode};
pub use crate::prim::{prim_mst, AttachEdge, PrimResult};
pub use crate::scalar::Scalar;

pub type DatasetF64 = Dataset<f64>;
pub type DatasetF32 = Dataset<f32>;
pub type EdgeWeightedGraphF64 = EdgeWeightedGraph<f64>;
pub type EdgeWeightedGraphF32 = EdgeWeightedGraph<f32>;
pub type DissimilaritySourceF64 = DissimilaritySource<f64>;
pub type DissimilaritySourceF32 = DissimilaritySource<f32>;
pub type PrimResultF64 = PrimResult<f64>;
pub type PrimResultF32 = PrimResult<f32>;
pub type DendrogramF64 = Dendrogram<f64>;
pub type DendrogramF32 = Dendrogram<f32>;
pub type MergeTableF64 = MergeTable<f64>;
pub type MergeTableF32 = MergeTable<f32>;
