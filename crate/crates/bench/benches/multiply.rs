use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use trimul_core::{
    disjoint_multiply, naive_triple, DisjointInputs, MatrixRng, Mode, Rational, Role,
};

fn float_inputs(n: usize, seed: u64) -> DisjointInputs<f64> {
    let mut rng = MatrixRng::new(seed);
    let mut mat = |role| rng.unit_matrix(role, n).unwrap();
    DisjointInputs::new(
        mat(Role::A),
        mat(Role::B),
        mat(Role::U),
        mat(Role::V),
        mat(Role::X),
        mat(Role::Y),
    )
    .unwrap()
}

fn bench_float(c: &mut Criterion) {
    let mut group = c.benchmark_group("float");
    for n in [4usize, 8, 16, 32] {
        let inputs = float_inputs(n, 1);
        group.bench_with_input(BenchmarkId::new("naive", n), &inputs, |b, inp| {
            b.iter(|| naive_triple(black_box(inp)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("raw", n), &inputs, |b, inp| {
            b.iter(|| disjoint_multiply(black_box(inp), Mode::Raw).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("corrected", n), &inputs, |b, inp| {
            b.iter(|| disjoint_multiply(black_box(inp), Mode::Corrected).unwrap())
        });
    }
    group.finish();
}

fn bench_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(20);
    for n in [2usize, 4, 8] {
        let inputs = DisjointInputs::<Rational>::random(n, &mut MatrixRng::new(1), 100).unwrap();
        group.bench_with_input(BenchmarkId::new("naive", n), &inputs, |b, inp| {
            b.iter(|| naive_triple(black_box(inp)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("corrected", n), &inputs, |b, inp| {
            b.iter(|| disjoint_multiply(black_box(inp), Mode::Corrected).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_float, bench_exact);
criterion_main!(benches);
