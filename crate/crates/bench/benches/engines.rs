use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use homlor::enumerate::{enumerate_graphs, EnumerationFilter};
use homlor::hom::hom_count_backtracking;
use homlor::{g_chromatic_polynomial, hom_count, is_lorentzian, Family};
use homlor_bench::{family, g0};

fn hom(c: &mut Criterion) {
    let c10 = family(Family::Cycle, &[10]);
    let k5 = family(Family::Complete, &[5]);
    let mut group = c.benchmark_group("hom_count");
    group.bench_function("c10_k5_frontier", |b| b.iter(|| hom_count(black_box(&c10), &k5).unwrap()));
    group.bench_function("c10_k5_backtracking", |b| b.iter(|| hom_count_backtracking(black_box(&c10), &k5).unwrap()));
    let k332 = family(Family::CompleteMultipartite, &[3, 3, 2]);
    group.bench_function("k332_g0", |b| b.iter(|| hom_count(black_box(&k332), &g0()).unwrap()));
    group.finish();
}

fn lorentzian(c: &mut Criterion) {
    let k3 = family(Family::Complete, &[3]);
    let k5 = family(Family::Complete, &[5]);
    let f = g_chromatic_polynomial(&k3, &k5).unwrap();
    c.bench_function("is_lorentzian_h_k3_k5", |b| b.iter(|| is_lorentzian(black_box(&f)).unwrap()));
    let p2 = family(Family::Path, &[2]);
    let g = g_chromatic_polynomial(&p2, &g0()).unwrap();
    c.bench_function("is_lorentzian_h_p2_g0", |b| b.iter(|| is_lorentzian(black_box(&g)).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("connected_6", |b| {
        b.iter(|| enumerate_graphs(6, EnumerationFilter { connected_only: true, ..Default::default() }).unwrap())
    });
    group.bench_function("looped_4", |b| {
        b.iter(|| enumerate_graphs(4, EnumerationFilter { loops: true, ..Default::default() }).unwrap())
    });
    group.finish();
}

criterion_group!(benches, hom, lorentzian, enumeration);
criterion_main!(benches);
