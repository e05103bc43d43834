//! Micro-benchmark over seeded synthetic point clouds.
//!
//! Each run records wall time of the MST stage, the tracked peak heap
//! bytes, and the MST total weight as a checksum against accidental
//! algorithmic change. Point clouds are uniform in the unit cube from a
//! fixed seed, so checksums are reproducible across runs.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::ingest::{Dataset, DissimilaritySource};
use crate::memtrack;
use crate::metric::Metric;
use crate::prim::prim_mst;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct BenchRecord<T> {
    pub n: usize,
    pub millis: f64,
    pub peak_bytes: usize,
    pub weight: T,
}

#[derive(Debug, Clone)]
pub struct BenchReport<T> {
    pub dim: usize,
    pub seed: u64,
    pub records: Vec<BenchRecord<T>>,
}

impl<T: Scalar> BenchReport<T> {
    /// CSV report "n,ms,peak_bytes,weight".
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,ms,peak_bytes,weight\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n, r.millis, r.peak_bytes, r.weight
            ));
        }
        out
    }

    /// R-squared of the least-squares line of peak bytes against n.
    pub fn memory_fit_r2(&self) -> f64 {
        let points: Vec<(f64, f64)> = self
            .records
            .iter()
            .map(|r| (r.n as f64, r.peak_bytes as f64))
            .collect();
        linear_r2(&points)
    }
}

/// Coefficient of determination of the least-squares line through the
/// points. Degenerate inputs (constant y) count as a perfect fit.
pub fn linear_r2(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if syy == 0.0 {
        return 1.0;
    }
    let slope = sxy / sxx;
    let ss_res: f64 = points
        .iter()
        .map(|p| {
            let fitted = mean_y + slope * (p.0 - mean_x);
            (p.1 - fitted).powi(2)
        })
        .sum();
    1.0 - ss_res / syy
}

/// Run the MST stage of the pipeline on uniform point clouds of the given
/// sizes. Sizes must be at least 2 and strictly increasing.
///
/// Peak bytes come from [`memtrack`] and cover generation through the Prim
/// run; install the tracking allocator (as the `primlink-bench` binary
/// does) for meaningful values. Timing covers the Prim run only.
pub fn run_bench<T: Scalar>(sizes: &[usize], dim: usize, seed: u64) -> Result<BenchReport<T>> {
    if sizes.is_empty() {
        return Err(Error::InvalidBenchSizes {
            reason: "no sizes given",
        });
    }
    if sizes.iter().any(|&n| n < 2) {
        return Err(Error::InvalidBenchSizes {
            reason: "every size must be at least 2",
        });
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidBenchSizes {
            reason: "sizes must be strictly increasing",
        });
    }
    if dim == 0 {
        return Err(Error::InvalidBenchSizes {
            reason: "dimension must be at least 1",
        });
    }

    let mut records = Vec::with_capacity(sizes.len());
    for &n in sizes {
        memtrack::reset_peak();
        let dataset = uniform_cloud::<T>(n, dim, seed);
        let src = DissimilaritySource::points(dataset, Metric::Euclidean);
        let start = Instant::now();
        let prim = prim_mst(&src, 0)?;
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let weight = prim.total_weight();
        let peak_bytes = memtrack::peak_bytes();
        records.push(BenchRecord {
            n,
            millis,
            peak_bytes,
            weight,
        });
    }
    Ok(BenchReport { dim, seed, records })
}

fn uniform_cloud<T: Scalar>(n: usize, dim: usize, seed: u64) -> Dataset<T> {
    // Distinct stream per size, reproducible across runs.
    let mut rng = StdRng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E3779B97F4A7C15));
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<T> = (0..dim)
            .map(|_| T::from(rng.random::<f64>()).expect("unit interval fits"))
            .collect();
        rows.push(row);
    }
    Dataset::new(rows, None).expect("generated rows are valid")
}
