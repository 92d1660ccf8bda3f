use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use galcoh::catalog::{build_named, verify_named};
use galcoh::globalcoh::global_ab_group;
use galcoh::intlat::elementary_divisors;
use galcoh::localcoh::h1_local;
use galcoh_bench::dense_matrix;

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    for n in [4usize, 8, 12] {
        let a = dense_matrix(n, n, 50, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| elementary_divisors(black_box(a)))
        });
    }
    g.finish();
}

fn models(c: &mut Criterion) {
    let mut g = c.benchmark_group("global model");
    for n in [2u64, 4, 6] {
        let e = build_named("pgl", Some(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("pgl", n), &e, |b, e| {
            b.iter(|| global_ab_group(&e.module, &e.places).unwrap())
        });
    }
    let e = build_named("appendix_a_rank6", None).unwrap();
    g.bench_function("appendix_a_rank6", |b| {
        b.iter(|| global_ab_group(&e.module, &e.places).unwrap())
    });
    g.finish();
}

fn local(c: &mut Criterion) {
    let e = build_named("appendix_a_rank6", None).unwrap();
    let v = &e.places.named_places[0];
    c.bench_function("h1 local rank6", |b| {
        b.iter(|| h1_local(&e.module, v).unwrap())
    });
}

fn verify(c: &mut Criterion) {
    c.bench_function("verify appendix_a_rank6", |b| {
        b.iter(|| verify_named("appendix_a_rank6", None).unwrap())
    });
}

criterion_group!(benches, smith, models, local, verify);
criterion_main!(benches);
