use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gentle_core::auslander::build_auslander;
use gentle_core::grassmannian::{enumerate_grassmannian, stratify, FingerprintBasis};
use gentle_core::io::{parse_dim_vector, parse_module};
use gentle_core::scenario::scenarios;
use gentle_core::{parse_quiver, PrimeField};

fn grassmannians(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for s in scenarios() {
        let q = Arc::new(parse_quiver(s.quiver).unwrap());
        let e = parse_dim_vector(s.e, &q).unwrap();
        for p in [2u32, 5] {
            let m = parse_module(s.module, &q, PrimeField::new(p).unwrap()).unwrap();
            group.bench_with_input(BenchmarkId::new(s.id, p), &m, |b, m| {
                b.iter(|| enumerate_grassmannian(black_box(m), &e).unwrap().len())
            });
        }
    }
    group.finish();
}

fn strata(c: &mut Criterion) {
    let mut group = c.benchmark_group("stratify");
    group.sample_size(10);
    for s in scenarios() {
        let q = Arc::new(parse_quiver(s.quiver).unwrap());
        let e = parse_dim_vector(s.e, &q).unwrap();
        let m = parse_module(s.module, &q, PrimeField::new(2).unwrap()).unwrap();
        let pts = enumerate_grassmannian(&m, &e).unwrap();
        let basis = FingerprintBasis::new(&m, 6).unwrap();
        group.bench_function(s.id, |b| b.iter(|| stratify(&m, black_box(&pts), &basis, 0).unwrap().len()));
    }
    group.finish();
}

fn lifted(c: &mut Criterion) {
    let s = &scenarios()[0];
    let q = Arc::new(parse_quiver(s.quiver).unwrap());
    let aus = build_auslander(&q).unwrap();
    let m = parse_module(s.module, &q, PrimeField::new(3).unwrap()).unwrap();
    let m_hat = aus.phi(&m).unwrap();
    let target = parse_dim_vector("1=2,3=1,@gamma=1", &aus.gamma).unwrap();
    c.bench_function("enumerate_lifted/5.1/3", |b| {
        b.iter(|| enumerate_grassmannian(black_box(&m_hat), &target).unwrap().len())
    });
}

criterion_group!(benches, grassmannians, strata, lifted);
criterion_main!(benches);
