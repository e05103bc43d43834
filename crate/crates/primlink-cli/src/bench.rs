//! Micro-benchmark binary: times the MST stage on seeded uniform point
//! clouds and reports "n,ms,peak_bytes,weight" CSV on standard output.
//!
//! The tracking allocator is installed here so peak_bytes reflects the
//! pipeline's true heap use; the weight column is a determinism checksum.

use clap::Parser;

use primlink::bench::run_bench;
use primlink::memtrack::TrackingAllocator;

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

/// MST micro-benchmark over seeded uniform point clouds.
#[derive(Parser, Debug)]
#[command(name = "primlink-bench", version)]
struct Cli {
    /// Point counts, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
    sizes: Vec<usize>,

    /// Dimensionality of the generated points.
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// RNG seed for the point clouds.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    match run_bench::<f64>(&cli.sizes, cli.dim, cli.seed) {
        Ok(report) => print!("{}", report.to_csv()),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
