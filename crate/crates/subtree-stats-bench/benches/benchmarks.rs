use criterion::{black_box, criterion_group, criterion_main, Criterion};

use subtree_stats::counting::StatsCache;
use subtree_stats::verify::{run_suite, SuiteConfig};
use subtree_stats::{
    core_decomposition, enumerate_subtrees, families, global_stats, k_extremal, Direction,
};
use subtree_stats_bench::{dense_broom, mid_double_spider, wide_caterpillar};

fn bench_counting(c: &mut Criterion) {
    let path = families::path(64).unwrap();
    let star = families::star(32).unwrap();
    let caterpillar = wide_caterpillar();
    c.bench_function("global_stats/path64", |b| {
        b.iter(|| global_stats(black_box(&path)))
    });
    c.bench_function("global_stats/star32", |b| {
        b.iter(|| global_stats(black_box(&star)))
    });
    c.bench_function("global_stats/caterpillar40", |b| {
        b.iter(|| global_stats(black_box(&caterpillar)))
    });
    c.bench_function("stats_cache/broom24", |b| {
        let t = dense_broom();
        b.iter(|| StatsCache::new(black_box(&t)))
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let t = mid_double_spider();
    c.bench_function("enumerate_subtrees/double_spider14", |b| {
        b.iter(|| enumerate_subtrees(black_box(&t), None, None).len())
    });
    c.bench_function("k_extremal_max6/double_spider14", |b| {
        b.iter(|| k_extremal(black_box(&t), 6, Direction::Max).unwrap().value)
    });
}

fn bench_structure(c: &mut Criterion) {
    let t = wide_caterpillar();
    c.bench_function("core_decomposition/caterpillar40", |b| {
        b.iter(|| core_decomposition(black_box(&t)))
    });
}

fn bench_suites(c: &mut Criterion) {
    let cfg = SuiteConfig {
        max_n: 5,
        seed: 7,
        samples: 0,
    };
    let mut group = c.benchmark_group("suite_small_corpus");
    group.sample_size(10);
    group.bench_function("density-step/max_n5", |b| {
        b.iter(|| run_suite("density-step", black_box(&cfg)).unwrap().checks)
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_counting,
    bench_enumeration,
    bench_structure,
    bench_suites
);
criterion_main!(benches);
