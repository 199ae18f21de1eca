//! Timing of index builds and query batches.
//!
//! Times are integer nanoseconds from the monotonic clock. Queries are timed
//! in batches of [`QUERY_BATCH`] points; the per-query figures are batch
//! time divided by batch size, which keeps clock overhead out of the
//! numbers. Each reported value is the median over repetitions.

use std::hint::black_box;
use std::time::Instant;

use crate::{Containment, Locator};

pub const CSV_HEADER: &str = "method,N,M,build_ns,mean_query_ns,p99_query_ns,max_occupancy,mismatches";

/// Points per timed query batch.
pub const QUERY_BATCH: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: String,
    /// Edge or face count of the shape.
    pub n: usize,
    /// Query points per repetition.
    pub m: usize,
    pub build_ns: u64,
    pub mean_query_ns: f64,
    pub p99_query_ns: f64,
    pub max_occupancy: Option<usize>,
    pub mismatches: usize,
}

impl BenchRecord {
    /// CSV row matching [`CSV_HEADER`]; a missing occupancy is left empty.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{:.3},{},{}",
            self.method,
            self.n,
            self.m,
            self.build_ns,
            self.mean_query_ns,
            self.p99_query_ns,
            self.max_occupancy.map(|o| o.to_string()).unwrap_or_default(),
            self.mismatches
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryTiming {
    pub mean_ns: f64,
    pub p99_ns: f64,
}

fn median_f64(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Nearest-rank percentile (`q` in `[0, 1]`) of unsorted samples.
pub fn percentile(samples: &mut [f64], q: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.sort_by(f64::total_cmp);
    let rank = ((q * samples.len() as f64).ceil() as usize).clamp(1, samples.len());
    samples[rank - 1]
}

/// Median build time over `reps` runs; returns the last index built.
pub fn time_build<L>(reps: usize, mut build: impl FnMut() -> L) -> (L, u64) {
    let reps = reps.max(1);
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        drop(last.take());
        let start = Instant::now();
        let index = black_box(build());
        times.push(start.elapsed().as_nanos() as f64);
        last = Some(index);
    }
    (last.expect("at least one repetition"), median_f64(times) as u64)
}

fn query_pass<P: Copy, L: Locator<P> + ?Sized>(locator: &L, points: &[P], batch_ns: &mut Vec<f64>) -> u64 {
    batch_ns.clear();
    let mut inside = 0usize;
    let total = Instant::now();
    for chunk in points.chunks(QUERY_BATCH) {
        let start = Instant::now();
        for &p in chunk {
            if black_box(locator.locate(black_box(p))) == Containment::Inside {
                inside += 1;
            }
        }
        batch_ns.push(start.elapsed().as_nanos() as f64 / chunk.len() as f64);
    }
    let elapsed = total.elapsed().as_nanos() as u64;
    black_box(inside);
    elapsed
}

/// Mean and p99 per-query time, each the median over `reps` passes after
/// one untimed warm-up pass.
pub fn time_queries<P: Copy, L: Locator<P> + ?Sized>(locator: &L, points: &[P], reps: usize) -> QueryTiming {
    if points.is_empty() {
        return QueryTiming {
            mean_ns: 0.0,
            p99_ns: 0.0,
        };
    }
    let mut batch_ns = Vec::with_capacity(points.len() / QUERY_BATCH + 1);
    query_pass(locator, points, &mut batch_ns);
    let (mut means, mut p99s) = (Vec::new(), Vec::new());
    for _ in 0..reps.max(1) {
        let total = query_pass(locator, points, &mut batch_ns);
        means.push(total as f64 / points.len() as f64);
        p99s.push(percentile(&mut batch_ns, 0.99));
    }
    QueryTiming {
        mean_ns: median_f64(means),
        p99_ns: median_f64(p99s),
    }
}
