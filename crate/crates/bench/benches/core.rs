use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dbe_core::bisplit::find_max_partition;
use dbe_core::canon::canonical_form;
use dbe_core::enumerate::gen_bisplit_graphs;
use dbe_core::graph::named;
use dbe_core::lines::all_lines;

fn benches(c: &mut Criterion) {
    let g = named::suspect_left();
    let c8 = named::cycle(8);
    c.bench_function("canonical_form/suspect_left", |b| {
        b.iter(|| canonical_form(black_box(&g)).unwrap())
    });
    c.bench_function("all_lines/cycle8", |b| b.iter(|| all_lines(black_box(&c8)).unwrap()));
    c.bench_function("find_max_partition/suspect_left", |b| {
        b.iter(|| find_max_partition(black_box(&g)).unwrap())
    });
    let mut group = c.benchmark_group("generation");
    group.sample_size(10);
    group.bench_function("gen_bisplit_graphs/7", |b| b.iter(|| gen_bisplit_graphs(black_box(7)).unwrap()));
    group.finish();
}

criterion_group!(core, benches);
criterion_main!(core);
