use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use parabound::profiles::{reference_gaussian, reference_rectangular};
use parabound::{
    elementary_bound, evolve, make_profile, optimize_probe, probe_bound, OptimizerConfig, ProbeFunction, QuadConfig,
    SolverConfig,
};

fn evolve_gaussian(c: &mut Criterion) {
    let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
    let mut g = c.benchmark_group("evolve_gaussian");
    for tol in [1e-6, 1e-8, 1e-10] {
        let cfg = SolverConfig::with_rel_tol(tol);
        g.bench_with_input(BenchmarkId::from_parameter(tol), &cfg, |b, cfg| {
            b.iter(|| evolve(black_box(&p), cfg, None).unwrap())
        });
    }
    g.finish();
}

fn evolve_probe_frame(c: &mut Criterion) {
    let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
    let probe = ProbeFunction::adiabatic(&p, 0.5).unwrap();
    let cfg = SolverConfig::with_rel_tol(1e-8);
    c.bench_function("evolve_gaussian_probe_frame", |b| b.iter(|| evolve(black_box(&p), &cfg, Some(&probe)).unwrap()));
}

fn evolve_rectangular(c: &mut Criterion) {
    let p = make_profile(&reference_rectangular(), 1e-8).unwrap();
    let cfg = SolverConfig::default();
    c.bench_function("evolve_rectangular", |b| b.iter(|| evolve(black_box(&p), &cfg, None).unwrap()));
}

fn bounds(c: &mut Criterion) {
    let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
    let q = QuadConfig::default();
    let probe = ProbeFunction::adiabatic(&p, 1.0).unwrap();
    c.bench_function("elementary_bound_gaussian", |b| b.iter(|| elementary_bound(black_box(&p), &q).unwrap()));
    c.bench_function("probe_bound_gaussian_adiabatic", |b| b.iter(|| probe_bound(black_box(&p), &probe, &q).unwrap()));
}

fn optimizer(c: &mut Criterion) {
    let p = make_profile(&reference_gaussian(), 1e-8).unwrap();
    let q = QuadConfig::default();
    let cfg = OptimizerConfig { max_iter: 200, ..OptimizerConfig::default() };
    let mut g = c.benchmark_group("optimize_probe");
    g.sample_size(10);
    g.bench_function("gaussian_n128", |b| b.iter(|| optimize_probe(black_box(&p), 128, &cfg, &q).unwrap()));
    g.finish();
}

criterion_group!(benches, evolve_gaussian, evolve_probe_frame, evolve_rectangular, bounds, optimizer);
criterion_main!(benches);
