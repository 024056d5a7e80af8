//! Sequential versus parallel scan throughput.
//!
//! Memo tables are cleared before every iteration so each measurement is a
//! cold start; otherwise the first iteration would do all the work and the
//! rest would time table lookups.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use schubert_core::exec::Threading;
use schubert_core::harness::{horn_vs_oracle_scan, ktt_scan};
use schubert_core::reset_memo_tables;

fn bench_ktt_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("ktt_scan_r2_n5_s3");
    for threading in [Threading::Sequential, Threading::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{threading:?}")),
            &threading,
            |b, &threading| {
                b.iter(|| {
                    reset_memo_tables();
                    ktt_scan(2, 5, 3, 4, threading).expect("scan succeeds")
                });
            },
        );
    }
    group.finish();
}

fn bench_horn_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("horn_vs_oracle_r2_n6_s3");
    group.sample_size(10);
    for threading in [Threading::Sequential, Threading::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{threading:?}")),
            &threading,
            |b, &threading| {
                b.iter(|| {
                    reset_memo_tables();
                    horn_vs_oracle_scan(2, 6, 3, threading).expect("scan succeeds")
                });
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_ktt_scan, bench_horn_scan);
criterion_main!(benches);
