use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pinch::decomposition::treewidth_exact;
use pinch::embed::{is_planar, is_projective};
use pinch::minors::find_minor_model;
use pinch::{graph6, params, Budget, Graph};
use pinch_bench::{fixture, fixtures};

fn codecs(c: &mut Criterion) {
    for (name, g) in fixtures() {
        c.bench_function(&format!("graph6_round_trip/{name}"), |b| {
            b.iter(|| graph6::decode(&graph6::encode(black_box(&g))).unwrap());
        });
    }
}

fn embeddings(c: &mut Criterion) {
    let budget = Budget::default();
    for (name, g) in fixtures() {
        c.bench_function(&format!("planar/{name}"), |b| b.iter(|| is_planar(black_box(&g))));
    }
    let k6 = fixture("k6");
    c.bench_function("projective/k6", |b| b.iter(|| is_projective(black_box(&k6), &budget)));
}

fn searches(c: &mut Criterion) {
    let budget = Budget::default();
    let grid = fixture("grid5");
    let k4 = Graph::complete(4);
    c.bench_function("minor/k4_in_grid5", |b| {
        b.iter(|| find_minor_model(black_box(&grid), &k4, None, &budget).unwrap())
    });
    let g = fixture("gnp10");
    c.bench_function("treewidth/gnp10", |b| {
        b.iter(|| treewidth_exact(black_box(&g)).unwrap())
    });
    let k7 = fixture("k7");
    let mut group = c.benchmark_group("params");
    group.sample_size(10);
    group.bench_function("idpr/k7", |b| b.iter(|| params::idpr(black_box(&k7), &budget).unwrap()));
    group.finish();
}

criterion_group!(benches, codecs, embeddings, searches);
criterion_main!(benches);
