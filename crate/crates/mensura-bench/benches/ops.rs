use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mensura::{disjointify_prefix, epsilon_cover, stage, verify_cover, Family, IntervalSet};
use mensura_bench::{canonical_pair, raw_intervals};

fn bench_normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for n in [16usize, 128, 1024] {
        let raw = raw_intervals(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &raw, |b, raw| {
            b.iter(|| IntervalSet::normalize(black_box(raw.clone())));
        });
    }
    group.finish();
}

fn bench_set_ops(c: &mut Criterion) {
    let (a, b) = canonical_pair(64, 2);
    c.bench_function("union/64", |bench| {
        bench.iter(|| black_box(&a).union(black_box(&b)))
    });
    c.bench_function("difference/64", |bench| {
        bench.iter(|| black_box(&a).difference(black_box(&b)))
    });
    c.bench_function("intersection/64", |bench| {
        bench.iter(|| black_box(&a).intersection(black_box(&b)))
    });
}

fn bench_cantor(c: &mut Criterion) {
    let mut group = c.benchmark_group("cantor_stage");
    group.sample_size(10);
    for depth in [8u32, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| stage(black_box(d)).unwrap());
        });
    }
    group.finish();
}

fn bench_disjointify(c: &mut Criterion) {
    c.bench_function("disjointify/unit-steps/64", |b| {
        let seq = Family::UnitSteps.seq();
        b.iter(|| disjointify_prefix(black_box(&seq), 64));
    });
}

fn bench_cover(c: &mut Criterion) {
    let mut rng_set = canonical_pair(32, 3).0;
    // The cover machinery wants bounded targets.
    rng_set = rng_set.intersection(&IntervalSet::from(mensura::Interval::closed(-40, 40)));
    let eps = mensura::Rational::new(1.into(), 8.into());
    c.bench_function("epsilon_cover+verify/32", |b| {
        b.iter(|| {
            let cover = epsilon_cover(black_box(&rng_set), &eps).unwrap();
            verify_cover(&cover)
        })
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_set_ops,
    bench_cantor,
    bench_disjointify,
    bench_cover
);
criterion_main!(benches);
