//! Timing and work counts for the three hot primitives, as CSV.
//!
//! Runs are independent, each seeded from `(seed, run index)`, so the work
//! columns do not depend on the number of worker threads.

use std::time::Instant;

use pillar_core::embed::{connect_short, growth_bound};
use pillar_core::expander::{check_expansion, CheckMode, ExpanderParams};
use pillar_core::graph::ball_layers;
use pillar_core::{Graph, VertexSet};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const HEADER: &str = "operation,runs,work,successes,micros";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub operation: &'static str,
    pub runs: usize,
    /// Vertices reached (balls), path edges (connections) or sets drawn
    /// (expansion check).
    pub work: u64,
    pub successes: usize,
    pub micros: u128,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.operation, self.runs, self.work, self.successes, self.micros
        )
    }
}

fn rng_for(seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run as u64 + 1);
    rng
}

fn timed<F: Fn(usize) -> (u64, bool) + Sync>(
    operation: &'static str,
    runs: usize,
    pool: &rayon::ThreadPool,
    f: F,
) -> BenchRow {
    let start = Instant::now();
    let results: Vec<(u64, bool)> = pool.install(|| (0..runs).into_par_iter().map(&f).collect());
    BenchRow {
        operation,
        runs,
        work: results.iter().map(|r| r.0).sum(),
        successes: results.iter().filter(|r| r.1).count(),
        micros: start.elapsed().as_micros(),
    }
}

/// Ball growth from single vertices up to radius `⌊ln n⌋`, robust
/// connections between random 100-vertex sets avoiding 3 random vertices,
/// and one sampled expansion check.
pub fn run(
    g: &Graph,
    params: &ExpanderParams,
    seed: u64,
    runs: usize,
    trials: usize,
    workers: usize,
) -> Vec<BenchRow> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let n = g.n();
    let runs = if n == 0 { 0 } else { runs };
    let radius = (n.max(1) as f64).ln().floor() as usize;

    let balls = timed("ball_growth", runs, &pool, |i| {
        let v = rng_for(seed, i).gen_range(0..n);
        let layers = ball_layers(g, &VertexSet::singleton(v), radius, &VertexSet::new());
        let met = (1..=radius).all(|r| layers.size_at(r) as f64 >= growth_bound(r));
        (layers.size_at(radius) as u64, met)
    });

    let side = 100.min(n / 3);
    let connect_runs = if side == 0 { 0 } else { runs };
    let connections = timed("connect_short", connect_runs, &pool, |i| {
        let mut rng = rng_for(seed ^ 0x5eed, i);
        let w_size = 3.min(n - 2 * side);
        let picked = sample(&mut rng, n, 2 * side + w_size).into_vec();
        let a: VertexSet = picked[..side].iter().copied().collect();
        let b: VertexSet = picked[side..2 * side].iter().copied().collect();
        let w: VertexSet = picked[2 * side..].iter().copied().collect();
        match connect_short(g, &a, &b, &w, params, side, false) {
            Ok(p) => (p.len() as u64, true),
            Err(_) => (0, false),
        }
    });

    let start = Instant::now();
    let (work, ok, checks) = if n == 0 {
        (0, 0, 0)
    } else {
        match check_expansion(g, params, CheckMode::Sampled { seed, trials }) {
            Ok(r) => (r.samples as u64, usize::from(r.is_clean()), 1),
            Err(_) => (0, 0, 1),
        }
    };
    let expansion = BenchRow {
        operation: "check_expansion_sampled",
        runs: checks,
        work,
        successes: ok,
        micros: start.elapsed().as_micros(),
    };
    vec![balls, connections, expansion]
}
