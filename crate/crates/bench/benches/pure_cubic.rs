use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metacyclic::class_group::class_group_from;
use metacyclic::class_group::factor_base;
use metacyclic::minima::Infrastructure;
use metacyclic::units::fundamental_unit_from;
use metacyclic::{build_field, classify_record, cube_saturate_units, normalize, scan, split_in_cyclotomic, CubicField};

fn field(d: u64) -> CubicField {
    build_field(&normalize(d, 3).unwrap()).unwrap()
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify_record");
    for d in [2u64, 43, 211] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| classify_record(black_box(d), 3).unwrap()));
    }
    g.finish();
}

fn stages(c: &mut Criterion) {
    let f = field(211);
    let infra = Infrastructure::build(&f).unwrap();
    c.bench_function("infrastructure/211", |b| b.iter(|| Infrastructure::build(black_box(&f)).unwrap()));
    c.bench_function("unit_certificate/211", |b| b.iter(|| fundamental_unit_from(&f, &infra).unwrap()));
    c.bench_function("class_group/211", |b| {
        b.iter(|| class_group_from(&f, &infra, factor_base(&f).unwrap()).unwrap())
    });
    c.bench_function("cube_saturation/211", |b| b.iter(|| cube_saturate_units(&f, &infra.epsilon).unwrap()));
}

fn splitting(c: &mut Criterion) {
    c.bench_function("split_in_cyclotomic/primes_below_10000", |b| {
        let primes: Vec<u64> = (2..10_000u64).filter(|&n| (2..n).take_while(|q| q * q <= n).all(|q| n % q != 0)).collect();
        b.iter(|| {
            for &ell in &primes {
                for p in [3, 5, 7] {
                    black_box(split_in_cyclotomic(ell, p).unwrap());
                }
            }
        })
    });
}

fn scanning(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("p3_2_to_50", |b| b.iter(|| scan(3, 2, 50, 0).unwrap()));
    g.finish();
}

criterion_group!(benches, classify, stages, splitting, scanning);
criterion_main!(benches);
