//! Sequential versus data-parallel throughput of the heavy kernels.
//!
//! Each kernel runs once inside a one-thread rayon pool and once inside a pool
//! with every available core. Without the `parallel` feature both arms are the
//! same sequential code.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPool;

use rtm_core::fbasis::forest_vector;
use rtm_core::hpoly::Word;
use rtm_core::kawa::{kawashima_rows, rank_report, rtm_rows, RankMethod};
use rtm_core::rtmap::rtm_images;

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    [("sequential", 1), ("parallel", all)]
        .into_iter()
        .map(|(name, n)| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap();
            (name, pool)
        })
        .collect()
}

fn bench_images(c: &mut Criterion) {
    let mut g = c.benchmark_group("rtm_images");
    let forests = forest_vector(4).unwrap();
    let words: Vec<Word> = Word::admissible_of_len(8).collect();
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "f_4 x w_8"), |b| {
            b.iter(|| pool.install(|| black_box(rtm_images(&forests, &words).unwrap())))
        });
    }
    g.finish();
}

fn bench_rows(c: &mut Criterion) {
    let mut g = c.benchmark_group("relation_rows");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "rtm k=10"), |b| {
            b.iter(|| pool.install(|| black_box(rtm_rows(10, false))))
        });
        g.bench_function(BenchmarkId::new(name, "kawashima k=10"), |b| {
            b.iter(|| pool.install(|| black_box(kawashima_rows(10))))
        });
    }
    g.finish();
}

fn bench_rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank_report");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new(name, "k=9 exact"), |b| {
            b.iter(|| pool.install(|| black_box(rank_report(9, false, Some(RankMethod::Exact)))))
        });
        g.bench_function(BenchmarkId::new(name, "k=10 modular"), |b| {
            b.iter(|| pool.install(|| black_box(rank_report(10, false, Some(RankMethod::Modular)))))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_images, bench_rows, bench_rank);
criterion_main!(benches);
