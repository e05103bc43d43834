use std::path::PathBuf;

use thiserror::Error;

/// A type alias for `Result<T, Error>`.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by loading, validation, and clustering operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}:{line}: column {column}: '{value}' is not a finite coordinate")]
    BadCoordinate {
        path: PathBuf,
        line: u64,
        column: usize,
        value: String,
    },

    #[error("{path}: no data rows")]
    EmptyInput { path: PathBuf },

    #[error("input contains no objects")]
    NoVertices,

    #[error("row {row} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("label column '{name}' not found in header")]
    LabelColumnNotFound { name: String },

    #[error("label column index {index} out of range for {width} columns")]
    LabelColumnOutOfRange { index: usize, width: usize },

    #[error("expected {expected} labels, found {found}")]
    LabelLengthMismatch { expected: usize, found: usize },

    #[error("{path}:{line}: cannot parse '{text}' as 'u v w'")]
    GraphSyntax {
        path: PathBuf,
        line: u64,
        text: String,
    },

    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("self-loop at vertex {id}")]
    SelfLoop { id: usize },

    #[error("edge weight '{value}' is not a finite non-negative number")]
    BadWeight { value: String },

    #[error("disconnected graph: {} vertices unreached from the seed: {}", unreached.len(), format_ids(unreached))]
    Disconnected { unreached: Vec<usize> },

    #[error("cluster count {k} out of range 1..={n}")]
    InvalidClusterCount { k: usize, n: usize },

    #[error("unknown metric '{name}'")]
    UnknownMetric { name: String },

    #[error("invalid bench sizes: {reason}")]
    InvalidBenchSizes { reason: &'static str },

    #[error("malformed newick text at byte {pos}: {detail}")]
    NewickParse { pos: usize, detail: String },

    #[error("{reason}")]
    NotATree { reason: String },
}

// Keep the diagnostic to one line even for large graphs.
fn format_ids(ids: &[usize]) -> String {
    const SHOWN: usize = 32;
    let mut out = String::from("[");
    for (i, id) in ids.iter().take(SHOWN).enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&id.to_string());
    }
    if ids.len() > SHOWN {
        out.push_str(&format!(", ... {} more", ids.len() - SHOWN));
    }
    out.push(']');
    out
}
