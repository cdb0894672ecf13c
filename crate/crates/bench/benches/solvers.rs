use cfactor::connfactor::{approx3, approx_r_plus_1};
use cfactor::factors::{directed_dfactor, min_dfactor};
use cfactor::instances::gen_random_metric;
use cfactor::matching::{perfect_matching, MatchingProblem};
use cfactor::tours::{christofides, held_karp};
use cfactor::{FactorSpec, Orientation, Sense, TourStrategy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn undirected(n: usize) -> cfactor::Instance {
    gen_random_metric(n, 7, Orientation::Undirected).unwrap()
}

fn blossom(c: &mut Criterion) {
    let mut g = c.benchmark_group("blossom");
    for n in [16, 64, 128] {
        let inst = undirected(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| perfect_matching(&MatchingProblem::new(inst, Sense::Min)).unwrap())
        });
    }
    g.finish();
}

fn factors(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_dfactor");
    g.sample_size(10);
    for (n, d) in [(16, 3), (24, 4), (32, 4)] {
        let inst = undirected(n);
        g.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &inst, |b, inst| {
            b.iter(|| min_dfactor(inst, FactorSpec::min(d)).unwrap())
        });
    }
    let dir = gen_random_metric(32, 7, Orientation::Directed).unwrap();
    g.bench_function("directed/d3/32", |b| b.iter(|| directed_dfactor(&dir, FactorSpec::min(3)).unwrap()));
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("connected");
    g.sample_size(10);
    for n in [16, 32] {
        let inst = undirected(n);
        g.bench_with_input(BenchmarkId::new("approx3/d3", n), &inst, |b, inst| b.iter(|| approx3(inst, 3).unwrap()));
        g.bench_with_input(BenchmarkId::new("r_plus_1/d4", n), &inst, |b, inst| {
            b.iter(|| approx_r_plus_1(inst, 4, TourStrategy::Christofides).unwrap())
        });
    }
    g.finish();
}

fn tours(c: &mut Criterion) {
    let mut g = c.benchmark_group("tours");
    for n in [10, 13] {
        let inst = undirected(n);
        g.bench_with_input(BenchmarkId::new("held_karp", n), &inst, |b, inst| b.iter(|| held_karp(inst).unwrap()));
    }
    let inst = undirected(64);
    g.bench_function("christofides/64", |b| b.iter(|| christofides(&inst).unwrap()));
    g.finish();
}

criterion_group!(benches, blossom, factors, solvers, tours);
criterion_main!(benches);
