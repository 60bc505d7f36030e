use std::hint::black_box;

use chroma_planes::{chromatic_fill, chromatic_number, hadwiger_number, FillConfig, OracleLimits};
use chroma_planes_bench::fixtures;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn chromatic(c: &mut Criterion) {
    let limits = OracleLimits::default();
    let mut group = c.benchmark_group("chromatic_number");
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| chromatic_number(black_box(g), &limits).unwrap())
        });
    }
    group.finish();
}

fn hadwiger(c: &mut Criterion) {
    let limits = OracleLimits::default();
    let mut group = c.benchmark_group("hadwiger_number");
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| hadwiger_number(black_box(g), &limits).unwrap())
        });
    }
    group.finish();
}

fn filling(c: &mut Criterion) {
    let config = FillConfig::default();
    let mut group = c.benchmark_group("chromatic_fill");
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| chromatic_fill(black_box(g), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, chromatic, hadwiger, filling);
criterion_main!(benches);
