use std::hint::black_box;

use candynim::allocation::{exhaustive_min_winner, five_pile_construct, DEFAULT_MAX_PILES};
use candynim::harness::{run_all, Profile};
use candynim::Solver;
use candynim_bench::fixtures;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

// A fresh solver per iteration, so every sample measures a cold memo.
fn cold_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("cold-solve");
    group.sample_size(10);
    for (name, game) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &game, |b, g| {
            b.iter(|| Solver::new().value(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn warm_solve(c: &mut Criterion) {
    let solver = Solver::new();
    let (_, game) = fixtures().swap_remove(1);
    solver.value(&game).unwrap();
    c.bench_function("warm-solve/three-pile-96", |b| {
        b.iter(|| solver.solve(black_box(&game)).unwrap())
    });
}

fn allocation(c: &mut Criterion) {
    let mut group = c.benchmark_group("allocation");
    group.sample_size(10);
    group.bench_function("exhaustive-n16", |b| {
        b.iter(|| exhaustive_min_winner(&Solver::new(), black_box(16), DEFAULT_MAX_PILES, None).unwrap())
    });
    group.bench_function("five-pile-n60", |b| {
        b.iter(|| five_pile_construct(&Solver::new(), black_box(60)).unwrap())
    });
    group.finish();
}

fn harness(c: &mut Criterion) {
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    group.bench_function("run-all-smoke", |b| b.iter(|| run_all(black_box(Profile::Smoke))));
    group.finish();
}

criterion_group!(benches, cold_solve, warm_solve, allocation, harness);
criterion_main!(benches);
