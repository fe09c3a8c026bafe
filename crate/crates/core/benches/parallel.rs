use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plasmon_core::field::{BoundaryConditions, FieldEvaluator};
use plasmon_core::oracle::{integrate_fixed, ResonanceScan, SystemSpec};
use plasmon_core::parallel;
use plasmon_core::pseudoforce::{DampedSolution, DrivenSystem};
use std::hint::black_box;

fn resonance_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("resonance_scan");
    for n_points in [2_000, 20_000] {
        let scan = ResonanceScan {
            energy: 2.0,
            xi: 0.1,
            u0: 0.1,
            kd_lo: 0.05,
            kd_hi: 3.0,
            n_points,
        };
        group.bench_with_input(BenchmarkId::new("parallel", n_points), &scan, |b, s| {
            b.iter(|| black_box(s.curve().unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n_points), &scan, |b, s| {
            b.iter(|| black_box(s.curve_sequential().unwrap()))
        });
    }
    group.finish();
}

fn oracle_batch(c: &mut Criterion) {
    let specs: Vec<SystemSpec> = (0..16)
        .map(|i| {
            let sys = DrivenSystem::new(1.2 + 0.1 * i as f64, 0.2, 0.1, 1.5).unwrap();
            SystemSpec::from_driven(&sys)
        })
        .collect();
    let bc = BoundaryConditions::values(0.1, 0.0);
    let run = |spec: &SystemSpec| integrate_fixed(spec, &bc, 1e-3, 20.0).unwrap();
    let mut group = c.benchmark_group("oracle_batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| black_box(parallel::map(&specs, run))));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(parallel::map_sequential(&specs, run)))
    });
    group.finish();
}

fn field_sampling(c: &mut Criterion) {
    let sys = DrivenSystem::new(2.0, 0.3, 0.1, 1.7).unwrap();
    let sol = DampedSolution::new(&sys, &BoundaryConditions::values(0.2, -0.1)).unwrap();
    let n = 200_000;
    let at = |i: usize| sol.eval(i as f64 * 1e-3);
    let mut group = c.benchmark_group("field_sampling");
    group.bench_function("parallel", |b| b.iter(|| black_box(parallel::map_range(n, at))));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(parallel::map_range_sequential(n, at)))
    });
    group.finish();
}

criterion_group!(benches, resonance_scan, oracle_batch, field_sampling);
criterion_main!(benches);
