//! Input loading: point datasets, explicit edge-weighted graphs, and the
//! uniform dissimilarity source over both.
//!
//! Points mode never materializes pairwise distances; values are computed
//! on demand from the stored coordinates. Peak memory here is O(n*d) for
//! points and O(|E|) for graphs.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::scalar::Scalar;

/// Points in row-major storage plus optional row labels.
///
/// Row order is file order; the original index of an object is its row
/// index. Immutable after construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Dataset<T> {
    n: usize,
    dim: usize,
    coords: Vec<T>,
    row_labels: Option<Vec<String>>,
}

impl<T: Scalar> Dataset<T> {
    /// Build from explicit rows. Rows must be non-empty, rectangular, and
    /// finite; labels, when given, must match the row count.
    pub fn new(rows: Vec<Vec<T>>, row_labels: Option<Vec<String>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::NoVertices);
        }
        let dim = rows[0].len();
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    row: i,
                    expected: dim,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::BadCoordinate {
                        path: "<memory>".into(),
                        line: i as u64,
                        column: j,
                        value: format!("{x}"),
                    });
                }
                coords.push(x);
            }
        }
        if let Some(labels) = &row_labels {
            if labels.len() != rows.len() {
                return Err(Error::LabelLengthMismatch {
                    expected: rows.len(),
                    found: labels.len(),
                });
            }
        }
        Ok(Dataset {
            n: rows.len(),
            dim,
            coords,
            row_labels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }
}

/// Column of a points CSV holding row labels rather than a coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
}

impl FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<LabelColumn, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.to_string()),
        })
    }
}

/// Load a points CSV. All non-label fields must parse as finite reals.
///
/// With `has_header` the first row names the columns; `label_column`
/// selects a label column by name (header required) or 0-based index, and
/// every remaining column is a coordinate.
pub fn load_points<T: Scalar + FromStr>(
    path: &Path,
    has_header: bool,
    label_column: Option<&LabelColumn>,
) -> Result<Dataset<T>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(BufReader::new(file));

    let wrap_csv = |source: csv::Error| Error::Csv {
        path: path.to_path_buf(),
        source,
    };

    // Resolve the label column to an index before touching data rows.
    let label_idx = match label_column {
        None => None,
        Some(LabelColumn::Index(i)) => Some(*i),
        Some(LabelColumn::Name(name)) => {
            let headers = reader.headers().map_err(wrap_csv)?;
            let idx = headers.iter().position(|h| h == name);
            match idx {
                Some(i) => Some(i),
                None => {
                    return Err(Error::LabelColumnNotFound {
                        name: name.clone(),
                    })
                }
            }
        }
    };

    let mut coords: Vec<T> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut n = 0usize;
    let mut dim = usize::MAX;

    for record in reader.records() {
        let record = record.map_err(wrap_csv)?;
        let line = record.position().map_or(0, |p| p.line());
        let width = record.len();
        if let Some(li) = label_idx {
            if li >= width {
                return Err(Error::LabelColumnOutOfRange { index: li, width });
            }
        }
        let row_dim = width - label_idx.map_or(0, |_| 1);
        if dim == usize::MAX {
            dim = row_dim;
        }
        // Ragged rows are rejected by the csv reader itself; this guards the
        // label-column arithmetic.
        debug_assert_eq!(row_dim, dim);
        for (col, field) in record.iter().enumerate() {
            if Some(col) == label_idx {
                labels.push(field.to_string());
                continue;
            }
            let value: T = field.parse().map_err(|_| Error::BadCoordinate {
                path: path.to_path_buf(),
                line,
                column: col,
                value: field.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::BadCoordinate {
                    path: path.to_path_buf(),
                    line,
                    column: col,
                    value: field.to_string(),
                });
            }
            coords.push(value);
        }
        n += 1;
    }

    if n == 0 || dim == 0 {
        return Err(Error::EmptyInput {
            path: path.to_path_buf(),
        });
    }
    Ok(Dataset {
        n,
        dim,
        coords,
        row_labels: label_idx.map(|_| labels),
    })
}

/// Explicit sparse graph with non-negative finite weights.
///
/// Parallel edges collapse to their minimum weight at construction, since
/// only the lightest parallel edge can enter an MST. Connectivity is not
/// checked here; Prim reports unreached vertices instead.
#[derive(Debug, Clone)]
pub struct EdgeWeightedGraph<T> {
    n: usize,
    edges: Vec<(usize, usize, T)>,
    adjacency: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> EdgeWeightedGraph<T> {
    pub fn new(n: usize, raw_edges: Vec<(usize, usize, T)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        for &(u, v, w) in &raw_edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { id: u });
            }
            if !w.is_finite() || w < T::zero() {
                return Err(Error::BadWeight {
                    value: format!("{w}"),
                });
            }
        }

        // Normalize endpoints, then keep the lightest copy of each pair.
        let mut normalized: Vec<(usize, usize, T)> = raw_edges
            .into_iter()
            .map(|(u, v, w)| (u.min(v), u.max(v), w))
            .collect();
        normalized.sort_by(|a, b| {
            (a.0, a.1)
                .cmp(&(b.0, b.1))
                .then(a.2.partial_cmp(&b.2).expect("finite weights"))
        });
        let mut edges: Vec<(usize, usize, T)> = Vec::with_capacity(normalized.len());
        for (u, v, w) in normalized {
            match edges.last() {
                Some(&(lu, lv, _)) if lu == u && lv == v => {}
                _ => edges.push((u, v, w)),
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(EdgeWeightedGraph { n, edges, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Deduplicated edges as (u, v, w) with u < v.
    pub fn edges(&self) -> &[(usize, usize, T)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, T)] {
        &self.adjacency[u]
    }
}

/// Load a whitespace-separated "u v w" edge list. `#` begins a comment.
pub fn load_edge_graph<T: Scalar + FromStr>(path: &Path, n: usize) -> Result<EdgeWeightedGraph<T>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);

    let mut edges: Vec<(usize, usize, T)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let lineno = idx as u64 + 1;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let syntax_err = || Error::GraphSyntax {
            path: path.to_path_buf(),
            line: lineno,
            text: text.to_string(),
        };
        let mut fields = text.split_whitespace();
        let (u, v, w) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), Some(w), None) => (u, v, w),
            _ => return Err(syntax_err()),
        };
        let u: usize = u.parse().map_err(|_| syntax_err())?;
        let v: usize = v.parse().map_err(|_| syntax_err())?;
        if u >= n {
            return Err(Error::VertexOutOfRange { id: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        if u == v {
            return Err(Error::SelfLoop { id: u });
        }
        let w: T = w.parse().map_err(|_| Error::BadWeight {
            value: w.to_string(),
        })?;
        if !w.is_finite() || w < T::zero() {
            return Err(Error::BadWeight {
                value: format!("{w}"),
            });
        }
        edges.push((u, v, w));
    }
    EdgeWeightedGraph::new(n, edges)
}

/// Uniform dissimilarity view over points or an explicit graph.
///
/// In points mode `dissimilarity(i, j)` evaluates the metric on demand and
/// is defined for every pair; in graph mode it is defined only on listed
/// edges. Immutable and safe to share across concurrent readers.
#[derive(Debug, Clone)]
pub enum DissimilaritySource<T> {
    Points { dataset: Dataset<T>, metric: Metric },
    Graph(EdgeWeightedGraph<T>),
}

impl<T: Scalar> DissimilaritySource<T> {
    pub fn points(dataset: Dataset<T>, metric: Metric) -> Self {
        DissimilaritySource::Points { dataset, metric }
    }

    pub fn graph(graph: EdgeWeightedGraph<T>) -> Self {
        DissimilaritySource::Graph(graph)
    }

    pub fn n(&self) -> usize {
        match self {
            DissimilaritySource::Points { dataset, .. } => dataset.n(),
            DissimilaritySource::Graph(g) => g.n(),
        }
    }

    /// Dissimilarity between two distinct vertices, or `None` when the pair
    /// is non-adjacent in graph mode.
    pub fn dissimilarity(&self, i: usize, j: usize) -> Option<T> {
        debug_assert_ne!(i, j);
        match self {
            DissimilaritySource::Points { dataset, metric } => {
                Some(metric.eval(dataset.row(i), dataset.row(j)))
            }
            DissimilaritySource::Graph(g) => g
                .neighbors(i)
                .iter()
                .find(|&&(v, _)| v == j)
                .map(|&(_, w)| w),
        }
    }
}
