use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trigfrac_bench::{dominant_system, example_one};
use trigfrac_core::prelude::*;

fn thomas(c: &mut Criterion) {
    let mut group = c.benchmark_group("thomas_solve");
    for n in [64, 1024, 16384] {
        let sys = dominant_system(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &sys, |b, sys| {
            b.iter(|| thomas_solve(black_box(sys)).unwrap())
        });
    }
    group.finish();
}

fn full_solve(c: &mut Criterion) {
    let problem = example_one();
    let mut group = c.benchmark_group("solve_example_1");
    group.sample_size(20);
    // the memory term makes the cost quadratic in M
    for (n, m) in [(40, 40), (80, 100), (80, 400)] {
        group.bench_with_input(BenchmarkId::new("N_M", format!("{n}x{m}")), &(n, m), |b, &(n, m)| {
            b.iter(|| solve(black_box(&problem), n, m).unwrap())
        });
    }
    group.finish();
}

fn stability_scan(c: &mut Criterion) {
    let ranges = ScanRanges { n_max: 200, ..ScanRanges::default() };
    let mut group = c.benchmark_group("stability");
    group.sample_size(10);
    group.bench_function("default_sweep_n200", |b| {
        b.iter(|| empirical_stability_scan(black_box(&ranges)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, thomas, full_solve, stability_scan);
criterion_main!(benches);
