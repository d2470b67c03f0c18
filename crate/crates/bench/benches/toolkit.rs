//! Criterion benchmarks over the toolkit's hot paths: enumeration,
//! chart construction, bracket geometry, kernel extraction, symmetry
//! prolongation, and one moduli-scan job.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use flagtower_core::charts::{fixture, pfaffian_system};
use flagtower_core::flagcomb::{enumerate_codes, validate_code};
use flagtower_core::geometry::{cauchy_characteristics, derived_flag, flag_generator_levels};
use flagtower_core::symmetry::{
    jet_symbol_names, prolong_symmetry, scan_assignment, BaseField,
};

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate m=2 length=8", |b| {
        b.iter(|| enumerate_codes(black_box(2), black_box(8)))
    });
}

fn bench_chart_build(c: &mut Criterion) {
    c.bench_function("build fixture zzz", |b| {
        b.iter(|| fixture(black_box("zzz"), &[]).unwrap())
    });
}

fn bench_pfaffian(c: &mut Criterion) {
    let chart = fixture("zzz", &[]).unwrap();
    c.bench_function("pfaffian system zzz", |b| {
        b.iter(|| pfaffian_system(black_box(&chart)).unwrap())
    });
}

fn bench_derived_flag(c: &mut Criterion) {
    let chart = fixture("zzz", &[]).unwrap();
    let d = chart.distribution().unwrap();
    c.bench_function("derived flag zzz depth 5", |b| {
        b.iter(|| derived_flag(black_box(&d), 5).unwrap())
    });
}

fn bench_cauchy(c: &mut Criterion) {
    let chart = fixture("zzz", &[]).unwrap();
    let d = chart.distribution().unwrap();
    let levels = flag_generator_levels(&d, 1).unwrap();
    c.bench_function("cauchy of squared distribution zzz", |b| {
        b.iter(|| {
            flagtower_core::geometry::cauchy_of_generators(
                black_box(chart.ring()),
                black_box(&levels[1]),
            )
            .unwrap()
        })
    });
    c.bench_function("cauchy of distribution zzz", |b| {
        b.iter(|| cauchy_characteristics(black_box(&d)).unwrap())
    });
}

fn bench_prolongation(c: &mut Criterion) {
    let order = 6;
    let chart = fixture("121two", &jet_symbol_names(order)).unwrap();
    let base = BaseField::generic(chart.ring(), order).unwrap();
    c.bench_function("prolong generic symmetry 121two", |b| {
        b.iter(|| prolong_symmetry(black_box(&base), black_box(&chart)).unwrap())
    });
}

fn bench_scan_job(c: &mut Criterion) {
    let code = validate_code("1.2.1.3.1", 2).unwrap();
    let steps = fixture("121two", &[]).unwrap().steps().to_vec();
    c.bench_function("moduli scan job 121two", |b| {
        b.iter(|| scan_assignment(black_box(&code), black_box(&steps)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_enumerate,
    bench_chart_build,
    bench_pfaffian,
    bench_derived_flag,
    bench_cauchy,
    bench_prolongation,
    bench_scan_job,
);
criterion_main!(benches);
