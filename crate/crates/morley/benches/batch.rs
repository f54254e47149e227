//! Parallel versus sequential batch verification. With the default
//! `parallel` feature `run_suite` shards cases over the rayon pool while
//! `run_suite_sequential` stays on one thread, so the pair measures the
//! fan-out gain directly; both produce identical reports.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use morley::batch::{run_suite, run_suite_sequential};

fn bench_suites(c: &mut Criterion) {
    for (suite, count) in [
        ("skew-pfaffian", 64u64),
        ("differential-identity", 8),
        ("nonvanishing", 4),
        ("luroth", 8),
    ] {
        let mut group = c.benchmark_group(suite);
        group.sample_size(10);
        group.bench_function(BenchmarkId::new("parallel", count), |b| {
            b.iter(|| run_suite(suite, 17, count).unwrap())
        });
        group.bench_function(BenchmarkId::new("sequential", count), |b| {
            b.iter(|| run_suite_sequential(suite, 17, count).unwrap())
        });
        group.finish();
    }
}

criterion_group!(benches, bench_suites);
criterion_main!(benches);
