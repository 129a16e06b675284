use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gradfuzz::fuzzy::forward;
use gradfuzz::training::{loss_and_gradients, train, TrainConfig};
use gradfuzz_bench::{fixture, SHAPES};
use std::hint::black_box;

fn bench_forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward");
    for (name, shape) in SHAPES {
        let f = fixture(shape, 1, 1);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| forward(black_box(&f.model), black_box(&f.x)).unwrap())
        });
    }
    group.finish();
}

fn bench_gradients(c: &mut Criterion) {
    let mut group = c.benchmark_group("loss_and_gradients");
    for (name, shape) in SHAPES {
        let f = fixture(shape, 142, 2);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| loss_and_gradients(black_box(&f.model), &f.x, &f.y).unwrap())
        });
    }
    group.finish();
}

fn bench_epochs(c: &mut Criterion) {
    let (_, shape) = SHAPES[0];
    let f = fixture(shape, 142, 3);
    let cfg = TrainConfig {
        max_epochs: 10,
        ..TrainConfig::default()
    };
    c.bench_function("train_10_epochs/wine", |b| {
        b.iter(|| train(f.model.clone(), &f.x, &f.y, &cfg).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_forward, bench_gradients, bench_epochs
}
criterion_main!(benches);
