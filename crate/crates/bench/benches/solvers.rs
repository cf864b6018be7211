//! Solver comparison across the generated families, plus a head-to-head of
//! the two core-approximation step implementations.
//!
//! Run with `cargo bench -p wincore-bench`; filter with e.g.
//! `cargo bench -p wincore-bench -- solve/wc-partial`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wincore::bstep::{compute_B, BStepMode};
use wincore::solvers::zielonka_solve;
use wincore::wcore::{partial_solve, solve_via_core};
use wincore::Player;
use wincore_bench::instances;

fn solver_comparison(c: &mut Criterion) {
    let games = instances();
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for (name, game) in &games {
        group.bench_with_input(BenchmarkId::new("wc-partial", name), game, |b, g| {
            b.iter(|| partial_solve(g))
        });
        group.bench_with_input(BenchmarkId::new("wc-exact", name), game, |b, g| {
            b.iter(|| solve_via_core(g).expect("products fit the guard at these sizes"))
        });
        group.bench_with_input(BenchmarkId::new("zielonka", name), game, |b, g| {
            b.iter(|| zielonka_solve(g))
        });
    }
    group.finish();
}

fn core_step_comparison(c: &mut Criterion) {
    let games = instances();
    let mut group = c.benchmark_group("compute-core");
    group.sample_size(20);
    for (name, game) in &games {
        group.bench_with_input(BenchmarkId::new("thresholds", name), game, |b, g| {
            b.iter(|| compute_B(g, Player::Even, BStepMode::Thresholds, false))
        });
        group.bench_with_input(BenchmarkId::new("naive-product", name), game, |b, g| {
            b.iter(|| compute_B(g, Player::Even, BStepMode::Naive, false))
        });
    }
    group.finish();
}

criterion_group!(benches, solver_comparison, core_step_comparison);
criterion_main!(benches);
