use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use conflop_bench::*;

fn algebra(c: &mut Criterion) {
    c.bench_function("truncated_algebra_8", |b| b.iter(|| truncated_algebra(black_box(8)).unwrap()));
    c.bench_function("stasheff_5", |b| b.iter(|| stasheff(black_box(5))));
}

fn stability(c: &mut Criterion) {
    c.bench_function("is_stable_vplus3", |b| b.iter(|| stability_vplus(black_box(3), false).unwrap()));
    c.bench_function("is_stable_vplus3_flopped", |b| b.iter(|| stability_vplus(black_box(3), true).unwrap()));
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("bound_4", |b| b.iter(|| scan(black_box(4)).unwrap()));
    g.finish();
}

fn homological(c: &mut Criterion) {
    c.bench_function("psi_sphere_4", |b| b.iter(|| sphere(black_box(4)).unwrap()));
    c.bench_function("ext_dims_s0_s1", |b| b.iter(|| ext_simple(black_box(6)).unwrap()));
}

fn arcs(c: &mut Criterion) {
    let mut g = c.benchmark_group("arcs");
    g.sample_size(10);
    g.bench_function("flop_s3", |b| b.iter(|| arc_flop(black_box(3)).unwrap()));
    g.finish();
}

criterion_group!(benches, algebra, stability, homological, arcs);
criterion_main!(benches);
