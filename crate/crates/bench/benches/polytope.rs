use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qmatch_bench::{instance, uniform_point};
use qmatch_core::separation::{brute_force, separate_exact};
use qmatch_core::verify::check_completeness;
use qmatch_core::{vertex_set, Limits, Variant};

fn separation(c: &mut Criterion) {
    for (m, n) in [(3, 3), (4, 4), (5, 5)] {
        let p = instance(m, n);
        let pt = uniform_point(&p);
        c.bench_function(&format!("separate_exact K{m},{n}"), |b| {
            b.iter(|| separate_exact(black_box(&p), black_box(&pt)))
        });
    }
    let p = instance(4, 4);
    let pt = uniform_point(&p);
    c.bench_function("brute_force exact K4,4", |b| {
        b.iter(|| brute_force::exact(black_box(&p), black_box(&pt)))
    });
}

fn enumeration(c: &mut Criterion) {
    let limits = Limits::default();
    let p = instance(3, 3);
    c.bench_function("vertex_set exact K3,3", |b| {
        b.iter(|| vertex_set(black_box(&p), Variant::Exact, &limits).unwrap())
    });
    let p = instance(2, 2);
    c.bench_function("completeness exact K2,2", |b| {
        b.iter(|| check_completeness(black_box(&p), Variant::Exact, &limits).unwrap())
    });
}

criterion_group!(benches, separation, enumeration);
criterion_main!(benches);
