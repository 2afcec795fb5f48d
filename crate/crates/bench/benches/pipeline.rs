use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use atomtele::analysis::{
    decay_time_thresholds, evaluate, nonclassical_region, sweep, RegionScan, SampleRange,
    SweepAxis, SweepSpec,
};
use atomtele::dynamics::{evolve_lindblad, evolve_x_analytic};
use atomtele::teleport::{average_fidelity_oracle, RecoveryStrategy};
use atomtele::{concurrence, concurrence_x_fast, coupling_pair, InitialState, StepControl};
use atomtele_bench::{bell, geometry, mixed_channel, SEPARATIONS};

fn couplings(c: &mut Criterion) {
    let mut group = c.benchmark_group("couplings");
    for r in SEPARATIONS {
        group.bench_with_input(BenchmarkId::from_parameter(r), &geometry(r), |b, g| {
            b.iter(|| coupling_pair(black_box(g)))
        });
    }
    group.finish();
}

fn evolution(c: &mut Criterion) {
    let rates = coupling_pair(&geometry(1.0 / 6.0)).unwrap();
    let x0 = bell(0);
    c.bench_function("analytic/t=1", |b| {
        b.iter(|| evolve_x_analytic(black_box(&x0), &rates, 1.0, 100.0, 1.0))
    });
    let rho0 = x0.to_density();
    let mut group = c.benchmark_group("integrator");
    group.sample_size(10);
    group.bench_function("t=1", |b| {
        b.iter(|| {
            evolve_lindblad(
                black_box(&rho0),
                &rates,
                1.0,
                100.0,
                1.0,
                &StepControl::default(),
            )
        })
    });
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let x = mixed_channel();
    let rho = x.to_density();
    c.bench_function("concurrence/eigen", |b| {
        b.iter(|| concurrence(black_box(&rho)))
    });
    c.bench_function("concurrence/x_fast", |b| {
        b.iter(|| concurrence_x_fast(black_box(&x)))
    });
    let s = RecoveryStrategy([1, 0, 3, 2]);
    c.bench_function("oracle/order6", |b| {
        b.iter(|| average_fidelity_oracle(black_box(&rho), &s, 6))
    });
    let geom = geometry(0.6737);
    c.bench_function("pipeline/point", |b| {
        b.iter(|| evaluate(InitialState::Bell1, black_box(&geom), 0.8))
    });
}

fn analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analysis");
    group.sample_size(10);
    group.bench_function("thresholds", |b| b.iter(decay_time_thresholds));
    group.bench_function("region/bell1", |b| {
        b.iter(|| nonclassical_region(InitialState::Bell1, 0.9, &RegionScan::default()))
    });
    let spec = SweepSpec::new(
        InitialState::Bell1,
        SweepAxis::Surface {
            gamma_t: SampleRange::new(0.0, 2.0, 101).unwrap(),
            r_over_lambda: SampleRange::new(0.05, 3.0, 101).unwrap(),
        },
    );
    group.bench_function("surface/101x101", |b| b.iter(|| sweep(black_box(&spec))));
    group.finish();
}

criterion_group!(benches, couplings, evolution, metrics, analysis);
criterion_main!(benches);
