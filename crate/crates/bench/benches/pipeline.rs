use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use vidcost_bench::{ramp, workload};
use vidcost_core::{
    fit_ols, predict_next_period_views, run_experiment, run_policy, synthesize_catalog,
    synthesize_views, ExperimentConfig, OlsForecaster, PolicyKind, PriceSheet,
};

fn bench_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit_ols");
    for hours in [24usize, 720, 8760] {
        let trace = ramp(hours, 40.0, -0.01);
        group.throughput(Throughput::Elements(hours as u64));
        group.bench_with_input(BenchmarkId::from_parameter(hours), &trace, |b, t| {
            b.iter(|| {
                let m = fit_ols(black_box(t)).unwrap();
                predict_next_period_views(&m, hours)
            })
        });
    }
    group.finish();
}

fn bench_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_views");
    group.sample_size(10);
    for n in [100usize, 1000] {
        let cfg = workload(n, 720);
        let catalog = synthesize_catalog(&cfg).unwrap();
        group.throughput(Throughput::Elements((n * 1440) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &catalog, |b, cat| {
            b.iter(|| synthesize_views(black_box(&cfg), cat).unwrap())
        });
    }
    group.finish();
}

fn bench_policies(c: &mut Criterion) {
    let cfg = workload(1000, 720);
    let catalog = synthesize_catalog(&cfg).unwrap();
    let traces = synthesize_views(&cfg, &catalog).unwrap();
    let prices = PriceSheet::default();
    let mut group = c.benchmark_group("run_policy");
    for kind in PolicyKind::ALL {
        group.bench_function(kind.name(), |b| {
            b.iter(|| run_policy(kind, &catalog, &traces, &prices, &OlsForecaster).unwrap())
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let config = ExperimentConfig {
        workload: workload(200, 720),
        replications: 2,
        ..ExperimentConfig::default()
    };
    let mut group = c.benchmark_group("run_experiment");
    group.sample_size(10);
    group.bench_function("6x2x200", |b| {
        b.iter(|| run_experiment(black_box(&config)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_fit,
    bench_synthesis,
    bench_policies,
    bench_sweep
);
criterion_main!(benches);
