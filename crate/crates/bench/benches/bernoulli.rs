use ambiclass_core::bernoulli::{admissible_search, b1_quadratic, mwk_order_check, stickelberger};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bernoulli(c: &mut Criterion) {
    let mut g = c.benchmark_group("b1_quadratic");
    for d in [-23i64, -4003, -9995] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| b1_quadratic(black_box(d)).unwrap())
        });
    }
    g.finish();
    c.bench_function("stickelberger_1009", |b| b.iter(|| stickelberger(black_box(1009), None).unwrap()));
    c.bench_function("mwk_check_-3299_p3", |b| b.iter(|| mwk_order_check(black_box(-3299), 3).unwrap()));
}

fn admissible(c: &mut Criterion) {
    let mut g = c.benchmark_group("admissible_search");
    g.sample_size(10);
    for bound in [1000u64, 4000] {
        g.bench_with_input(BenchmarkId::new("-23", bound), &bound, |b, &bound| {
            b.iter(|| admissible_search(-23, 3, 1, bound).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bernoulli, admissible);
criterion_main!(benches);
