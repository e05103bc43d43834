//! Command-line driver: ingestion, Prim's algorithm, dendrogram, exports.
//!
//! Identical inputs and flags produce byte-identical outputs; floats print
//! in their shortest round-trip form.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};

use primlink::memtrack::{self, TrackingAllocator};
use primlink::{
    load_edge_graph, load_points, prim_mst, to_newick, Dendrogram, DissimilaritySource,
    LabelColumn, Metric, Partition,
};

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Points,
    Graph,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Merge,
    Newick,
    Json,
}

/// Single-linkage hierarchical clustering without a distance matrix.
///
/// Reads a points CSV (or an explicit "u v w" edge list with --mode graph),
/// computes the minimum spanning tree with Prim's algorithm, derives the
/// single-linkage dendrogram, and prints it as a merge table, Newick tree,
/// or JSON node dump. With --cut-height or --k it also emits flat cluster
/// labels.
#[derive(Parser, Debug)]
#[command(name = "primlink", version, disable_help_subcommand = true)]
struct Cli {
    /// Input file path.
    #[arg(long)]
    input: PathBuf,

    /// How to interpret the input file.
    #[arg(long, value_enum, default_value_t = Mode::Points)]
    mode: Mode,

    /// Dissimilarity for points mode: euclidean, squared-euclidean,
    /// manhattan, or chebyshev.
    #[arg(long)]
    metric: Option<String>,

    /// Vertex id to start Prim's algorithm from.
    #[arg(long, default_value_t = 0)]
    seed_vertex: usize,

    /// Cut the dendrogram at this height; edges of weight >= the height
    /// are broken.
    #[arg(long)]
    cut_height: Option<f64>,

    /// Cut the dendrogram into exactly this many clusters.
    #[arg(long)]
    k: Option<usize>,

    /// Serialization written to standard output.
    #[arg(long, value_enum, default_value_t = Format::Merge)]
    format: Format,

    /// Write cluster labels CSV to this file instead of standard output.
    #[arg(long)]
    labels_out: Option<PathBuf>,

    /// Number of vertices (graph mode only).
    #[arg(long)]
    graph_n: Option<usize>,

    /// Treat the first CSV row as a header (points mode only).
    #[arg(long)]
    has_header: bool,

    /// Label column: a header name (with --has-header) or a 0-based index
    /// (points mode only).
    #[arg(long)]
    label_column: Option<String>,

    /// Report peak memory counters on standard error after the run.
    #[arg(long)]
    mem_stats: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    if cli.cut_height.is_some() && cli.k.is_some() {
        bail!("--cut-height and --k are mutually exclusive");
    }
    match cli.mode {
        Mode::Graph => {
            if cli.metric.is_some() {
                bail!("--metric applies to points mode only");
            }
            if cli.has_header || cli.label_column.is_some() {
                bail!("--has-header and --label-column apply to points mode only");
            }
            if cli.graph_n.is_none() {
                bail!("graph mode requires --graph-n");
            }
        }
        Mode::Points => {
            if cli.graph_n.is_some() {
                bail!("--graph-n applies to graph mode only");
            }
        }
    }
    if cli.labels_out.is_some() && cli.cut_height.is_none() && cli.k.is_none() {
        bail!("--labels-out requires --cut-height or --k");
    }

    let (source, row_labels): (DissimilaritySource<f64>, Option<Vec<String>>) = match cli.mode {
        Mode::Points => {
            let metric: Metric = cli.metric.as_deref().unwrap_or("euclidean").parse()?;
            let label_column: Option<LabelColumn> =
                cli.label_column.as_deref().map(|s| s.parse().unwrap());
            let dataset =
                load_points::<f64>(&cli.input, cli.has_header, label_column.as_ref())?;
            let labels = dataset.row_labels().map(<[String]>::to_vec);
            (DissimilaritySource::points(dataset, metric), labels)
        }
        Mode::Graph => {
            let n = cli.graph_n.expect("validated above");
            let graph = load_edge_graph::<f64>(&cli.input, n)?;
            (DissimilaritySource::graph(graph), None)
        }
    };

    let prim = prim_mst(&source, cli.seed_vertex)?;
    let dendrogram = Dendrogram::build(&prim);

    let partition: Option<Partition> = match (cli.cut_height, cli.k) {
        (Some(t), None) => Some(dendrogram.cut_threshold(t)),
        (None, Some(k)) => Some(dendrogram.cut_k(k)?),
        _ => None,
    };

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match (&partition, &cli.labels_out) {
        // A cut with no labels destination: the labels are the product.
        (Some(partition), None) => {
            partition.write_csv(&mut out, row_labels.as_deref())?;
        }
        _ => {
            write_format(&mut out, cli.format, &dendrogram, row_labels.as_deref())?;
            if let (Some(partition), Some(path)) = (&partition, &cli.labels_out) {
                let file = File::create(path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                let mut w = BufWriter::new(file);
                partition.write_csv(&mut w, row_labels.as_deref())?;
                w.flush()?;
            }
        }
    }
    out.flush()?;

    if cli.mem_stats {
        eprintln!("peak_tracked_bytes={}", memtrack::peak_bytes());
        match memtrack::peak_rss_bytes() {
            Some(rss) => eprintln!("peak_rss_bytes={rss}"),
            None => eprintln!("peak_rss_bytes=unavailable"),
        }
    }
    Ok(())
}

fn write_format<W: Write>(
    w: &mut W,
    format: Format,
    dendrogram: &Dendrogram<f64>,
    row_labels: Option<&[String]>,
) -> anyhow::Result<()> {
    match format {
        Format::Merge => dendrogram.merge_table().write_csv(w)?,
        Format::Newick => writeln!(w, "{}", to_newick(dendrogram, row_labels)?)?,
        Format::Json => writeln!(w, "{}", dendrogram.to_json())?,
    }
    Ok(())
}
