use ambiclass_bench::{fundamental_range, DEEP_FILTRATIONS};
use ambiclass_core::{class_group, compute_filtration, FormClassGroup, QuadraticField, Sense};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_group");
    for d in [-47i64, -9736, 1365, 9997] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| class_group(black_box(d), Sense::Narrow).unwrap())
        });
    }
    g.finish();
    let ds = fundamental_range(-1000, 1000);
    c.bench_function("oracle_sweep_1000", |b| {
        b.iter(|| ds.iter().map(|&d| FormClassGroup::new(d).unwrap().order()).sum::<usize>())
    });
}

fn filtration(c: &mut Criterion) {
    let mut g = c.benchmark_group("filtration");
    for &d in DEEP_FILTRATIONS {
        let k = QuadraticField::from_discriminant(d).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(d), &k, |b, k| {
            b.iter(|| compute_filtration(black_box(k)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, oracle, filtration);
criterion_main!(benches);
