use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use dyntopo::homology::{betti_numbers, scc_decomposition, CoefficientField};
use dyntopo::renewal::{LifetimeDistribution, OnOffTimeline};
use dyntopo::rng::Stream;
use dyntopo_bench::{clique_model, lm_model};
use std::hint::black_box;

fn bench_timeline_sampling(c: &mut Criterion) {
    let dist = LifetimeDistribution::exponential(1.0).unwrap();
    c.bench_function("timeline_sample_exp_h2", |b| {
        let mut rng = Stream::seed_from(7);
        b.iter(|| {
            let tl = OnOffTimeline::sample(&dist, 0.1, 2.0, &mut rng).unwrap();
            black_box(tl.arrivals().len())
        })
    });
}

fn bench_model_build(c: &mut Criterion) {
    c.bench_function("build_clique_n60", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            black_box(clique_model(60, seed).timeline_count())
        })
    });
}

fn bench_snapshot(c: &mut Criterion) {
    let clique = clique_model(60, 42);
    c.bench_function("snapshot_clique_n60", |b| {
        b.iter(|| black_box(clique.snapshot_at(1.0).unwrap().face_count(1)))
    });
    let lm = lm_model(30, 42);
    c.bench_function("snapshot_lm_n30", |b| {
        b.iter(|| black_box(lm.snapshot_at(1.0).unwrap().face_count(2)))
    });
}

fn bench_homology(c: &mut Criterion) {
    let lm = lm_model(30, 42);
    let snap = lm.snapshot_at(1.0).unwrap();
    c.bench_function("betti_gf2_lm_n30", |b| {
        b.iter_batched(
            || snap.clone(),
            |s| black_box(betti_numbers(&s, CoefficientField::Gf2).betti_at(2)),
            BatchSize::SmallInput,
        )
    });
    let small = lm_model(12, 43).snapshot_at(0.5).unwrap();
    c.bench_function("betti_rational_lm_n12", |b| {
        b.iter_batched(
            || small.clone(),
            |s| black_box(betti_numbers(&s, CoefficientField::Rational).betti_at(2)),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("scc_order2_lm_n30", |b| {
        b.iter_batched(
            || snap.clone(),
            |s| black_box(scc_decomposition(&s, 2, CoefficientField::Gf2).components.len()),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    kernels,
    bench_timeline_sampling,
    bench_model_build,
    bench_snapshot,
    bench_homology
);
criterion_main!(kernels);
