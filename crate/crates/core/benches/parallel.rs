//! Compares the data-parallel execution path against smaller thread pools
//! (and, when built with `--no-default-features`, the sequential fallback).
//!
//! Run `cargo bench` for the parallel build and
//! `cargo bench --no-default-features` for the sequential one; benchmark ids
//! carry the mode so the two reports can sit side by side. Within a parallel
//! build the same workloads also run under 1-, 2-, and all-thread pools.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dmis::dnn::{DnnObjective, Variant};
use dmis::gen;
use dmis::pipeline::{solve, PipelineConfig};
use dmis::train::{init_scores, TrainConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
const MODE: &str = "parallel";
#[cfg(not(feature = "parallel"))]
const MODE: &str = "sequential";

/// Thread counts to bench under (0 = rayon's default, i.e. all cores).
#[cfg(feature = "parallel")]
const POOLS: &[usize] = &[1, 2, 0];

#[cfg(feature = "parallel")]
fn with_pool<F: FnOnce() + Send>(threads: usize, f: F) {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("pool")
        .install(f);
}

fn gradient_workload(n: usize, p: f64) -> (DnnObjective, dmis::dnn::NodeScores) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = gen::erdos_renyi(n, p, &mut rng).unwrap();
    let variant = if n <= 5000 { Variant::H } else { Variant::F };
    let obj = DnnObjective::build_with_cap(&g, variant, usize::MAX).unwrap();
    let scores = init_scores(&g, &TrainConfig::default(), &mut rng);
    (obj, scores)
}

fn bench_gradient(c: &mut Criterion) {
    let mut group = c.benchmark_group("gradient");
    group.sample_size(10);
    for &(n, p) in &[(4000usize, 0.002), (20000, 0.0005)] {
        let (obj, scores) = gradient_workload(n, p);
        let mut out = vec![0.0; n];

        #[cfg(feature = "parallel")]
        for &t in POOLS {
            let label = if t == 0 { "all-threads".into() } else { format!("{t}-thread") };
            group.bench_with_input(
                BenchmarkId::new(format!("{MODE}/{label}"), n),
                &n,
                |b, _| {
                    b.iter(|| with_pool(t, || obj.gradient_into(&scores, &mut out)));
                },
            );
        }
        #[cfg(not(feature = "parallel"))]
        group.bench_with_input(BenchmarkId::new(MODE, n), &n, |b, _| {
            b.iter(|| obj.gradient_into(&scores, &mut out));
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = gen::erdos_renyi(1500, 0.004, &mut rng).unwrap();
    let mut cfg = PipelineConfig::default();
    // the improvement loop dominates end-to-end time and parallelizes only
    // through the per-community solves; keep the bench on the core phases
    cfg.use_improve = false;

    #[cfg(feature = "parallel")]
    for &t in POOLS {
        let label = if t == 0 { "all-threads".into() } else { format!("{t}-thread") };
        group.bench_function(BenchmarkId::new(format!("{MODE}/{label}"), "er-1500"), |b| {
            b.iter(|| {
                with_pool(t, || {
                    solve(&g, "bench", &cfg).unwrap();
                })
            });
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function(BenchmarkId::new(MODE, "er-1500"), |b| {
        b.iter(|| solve(&g, "bench", &cfg).unwrap());
    });

    group.finish();
}

criterion_group!(benches, bench_gradient, bench_solve);
criterion_main!(benches);
