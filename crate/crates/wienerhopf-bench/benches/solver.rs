use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::f64::consts::PI;
use wienerhopf::cauchy::assemble_cauchy;
use wienerhopf::farfield::{directivity, theta_grid};
use wienerhopf::mapping::RationalMap;
use wienerhopf::rh::solve;
use wienerhopf_bench::sommerfeld_fixture;

fn bench_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_cauchy");
    group.sample_size(10);
    for n in [65usize, 129] {
        for map in [RationalMap::two_to_one(), RationalMap::four_to_one()] {
            group.bench_with_input(
                BenchmarkId::new(map.name(), n),
                &n,
                |b, &n| b.iter(|| assemble_cauchy(&map, n).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sommerfeld_solve");
    group.sample_size(10);
    let dp = sommerfeld_fixture(RationalMap::four_to_one());
    for n in [65usize, 129] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| solve(&dp.rh, n).unwrap())
        });
    }
    group.finish();
}

fn bench_directivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("directivity");
    group.sample_size(10);
    let dp = sommerfeld_fixture(RationalMap::four_to_one());
    let sol = solve(&dp.rh, 129).unwrap();
    let thetas = theta_grid(0.0, 2.0 * PI, 361);
    group.bench_function("sommerfeld_361", |b| {
        b.iter(|| directivity(&sol, &dp, &thetas).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_assembly, bench_solve, bench_directivity);
criterion_main!(benches);
