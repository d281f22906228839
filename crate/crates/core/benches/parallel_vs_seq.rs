//! Rayon vs sequential comparison for the data-parallel inner loops: the
//! flow drift field, best-reply profiles, and the feasibility sweep.
//!
//! Run with `cargo bench -p bidflow-core` (the `parallel` feature is
//! required and on by default).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bidflow_core::diagnostics::{feasibility_search, SearchRanges};
use bidflow_core::equilibrium::{
    best_reply_profile, best_reply_profile_seq, drift_field, drift_field_seq,
};
use bidflow_core::model::{Interval, MarketParams, StrategyProfile};

fn instance(nodes: usize) -> MarketParams {
    MarketParams::symmetric_uniform(
        Interval::new(1.0, 1.05).unwrap(),
        Interval::new(0.9, 1.6).unwrap(),
        1.0,
        0.1,
        nodes,
    )
    .unwrap()
}

fn bench_drift_field(c: &mut Criterion) {
    let mut group = c.benchmark_group("drift_field");
    for nodes in [51usize, 201, 801] {
        let params = instance(nodes);
        let profile = StrategyProfile::identity(&params);
        group.bench_with_input(BenchmarkId::new("seq", nodes), &nodes, |b, _| {
            b.iter(|| drift_field_seq(&profile, &params).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", nodes), &nodes, |b, _| {
            b.iter(|| drift_field(&profile, &params).unwrap())
        });
    }
    group.finish();
}

fn bench_best_reply_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("best_reply_profile");
    group.sample_size(10);
    for nodes in [51usize, 201] {
        let params = instance(nodes);
        let profile = StrategyProfile::identity(&params);
        group.bench_with_input(BenchmarkId::new("seq", nodes), &nodes, |b, _| {
            b.iter(|| best_reply_profile_seq(0, &profile, &params).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", nodes), &nodes, |b, _| {
            b.iter(|| best_reply_profile(0, &profile, &params).unwrap())
        });
    }
    group.finish();
}

fn bench_feasibility_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("feasibility_sweep");
    group.sample_size(10);
    let ranges = SearchRanges::broad();
    group.bench_function("budget_4096", |b| {
        b.iter(|| feasibility_search(&ranges, 4096, &[], 11, 1).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_drift_field,
    bench_best_reply_profile,
    bench_feasibility_sweep
);
criterion_main!(benches);
