use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reeb_bench::{annulus, ellipse_chain, random_specs};
use reeb_core::curve::analyze_curve;
use reeb_core::graphops::{canonical_code, trident_dual};
use reeb_core::poly::resultant_y;
use reeb_core::realize::{add_branches, unit_disk, Case, RealizationRequest};
use reeb_core::reeb::sweep;
use reeb_core::Var;

fn bench_sweep(c: &mut Criterion) {
    let spec = annulus();
    c.bench_function("sweep/annulus", |b| b.iter(|| sweep(black_box(&spec)).unwrap()));
    let mut group = c.benchmark_group("sweep/random");
    group.sample_size(10);
    for k in 1..=3 {
        let specs = random_specs(k, 4);
        group.bench_with_input(BenchmarkId::from_parameter(k), &specs, |b, specs| {
            b.iter(|| specs.iter().map(|s| sweep(s).unwrap().edges.len()).sum::<usize>())
        });
    }
    group.finish();
}

fn bench_curves(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze/ellipses");
    group.sample_size(10);
    for n in 1..=3 {
        let f = ellipse_chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(2 * n), &f, |b, f| b.iter(|| analyze_curve(f, 0).unwrap()));
    }
    group.finish();
    let f = ellipse_chain(3);
    let fy = f.derivative(Var::Y);
    c.bench_function("resultant/discriminant_deg6", |b| b.iter(|| resultant_y(black_box(&f), &fy).unwrap()));
}

fn bench_graphs(c: &mut Criterion) {
    let g = sweep(&annulus()).unwrap();
    c.bench_function("graph/code", |b| b.iter(|| canonical_code(black_box(&g)).unwrap()));
    c.bench_function("graph/dual", |b| b.iter(|| trident_dual(black_box(&g)).unwrap()));
    let mut group = c.benchmark_group("realize");
    group.sample_size(10);
    let req = RealizationRequest { base: unit_disk(), case: Case::A };
    group.bench_function("disk_case_a", |b| b.iter(|| add_branches(black_box(&req)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_curves, bench_graphs);
criterion_main!(benches);
