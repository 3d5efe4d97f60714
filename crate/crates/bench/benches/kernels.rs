use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperkernel::coefficients::s_sequence;
use hyperkernel::kernels::DEFAULT_TRUNCATION_CAP;
use hyperkernel::specfun::{hyp2f1, HypParams21};
use hyperkernel::{CoefTable, KernelSeries, Params};

fn special_functions(c: &mut Criterion) {
    let params = HypParams21::new(1.5, -0.5, 41.5).unwrap();
    c.bench_function("hyp2f1/z=0.81", |b| b.iter(|| hyp2f1(black_box(&params), black_box(0.81))));

    let ball = Params::new(3, 0.0).unwrap();
    let mut group = c.benchmark_group("s_sequence");
    for r in [0.5, 0.9, 0.99] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| s_sequence(black_box(r), 400, &ball).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("coef_table");
    group.sample_size(10);
    for (n, alpha) in [(3, 0.0), (4, 0.5)] {
        let params = Params::new(n, alpha).unwrap();
        group.bench_function(format!("n={n},alpha={alpha}"), |b| b.iter(|| CoefTable::new(params, 400, 4).unwrap()));
    }
    group.finish();
}

fn kernel_eval(c: &mut Criterion) {
    let table = CoefTable::with_defaults(Params::new(3, 0.0).unwrap()).unwrap();
    let engine = KernelSeries::bergman(&table, 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
    let mut group = c.benchmark_group("bergman_eval");
    for r in [0.5, 0.9, 0.99] {
        let x = [r, 0.0, 0.0];
        let y = [0.0, r, 0.0];
        group.bench_with_input(BenchmarkId::new("value", r), &r, |b, _| b.iter(|| engine.eval(&x, &y).unwrap()));
        group.bench_with_input(BenchmarkId::new("gradient", r), &r, |b, _| b.iter(|| engine.gradient(&x, &y).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, special_functions, tables, kernel_eval);
criterion_main!(benches);
