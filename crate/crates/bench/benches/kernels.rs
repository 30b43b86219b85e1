use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use tvcable_bench::{knot, level};
use tvcable_core::{
    cabling_matrix, operator_norm, p2_factorization, p2_inverse, scan, turaev_viro, LevelRange,
    TqftParameter,
};

fn exact_matrices(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    for r in [21, 101, 201] {
        let t = level(r);
        group.bench_with_input(BenchmarkId::new("cabling_matrix", r), &t, |b, t| {
            b.iter(|| cabling_matrix(black_box(t), 3, 2).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("factorization_compose", r), &t, |b, t| {
            b.iter(|| p2_factorization(black_box(t), 3).unwrap().compose())
        });
        group.bench_with_input(BenchmarkId::new("inverse_product", r), &t, |b, t| {
            let m = cabling_matrix(t, 3, 2).unwrap();
            let n = p2_inverse(t, 3).unwrap();
            b.iter(|| m.compose(black_box(&n)).is_identity())
        });
    }
    group.finish();
}

fn norms(c: &mut Criterion) {
    let mut group = c.benchmark_group("operator_norm");
    group.sample_size(10);
    for r in [51, 201] {
        let t = level(r);
        let forward = cabling_matrix(&t, 3, 2).unwrap().numeric_view();
        let inverse = p2_inverse(&t, 3).unwrap().numeric_view();
        group.bench_with_input(BenchmarkId::new("forward", r), &forward, |b, m| {
            b.iter(|| operator_norm(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("inverse", r), &inverse, |b, m| {
            b.iter(|| operator_norm(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn turaev_viro_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("turaev_viro");
    for (spec, r) in [
        ("figure8", 1001),
        ("cable:3:figure8", 301),
        ("cable:3:cable:5:figure8", 301),
    ] {
        let k = knot(spec);
        let t = level(r);
        group.bench_function(BenchmarkId::new(spec, r), |b| {
            b.iter(|| turaev_viro(black_box(&t), black_box(&k)).unwrap())
        });
    }
    let wide = TqftParameter::with_precision(301, 106).unwrap();
    let k = knot("cable:3:figure8");
    group.bench_function("cable:3:figure8/301@106bits", |b| {
        b.iter(|| turaev_viro(black_box(&wide), &k).unwrap())
    });
    group.finish();
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    let range = LevelRange::new(51, 301).unwrap();
    let k = knot("cable:3:figure8");
    for jobs in [1, 4] {
        group.bench_with_input(
            BenchmarkId::new("cable:3:figure8", jobs),
            &jobs,
            |b, &jobs| b.iter(|| scan(range, &k, 53, jobs).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    exact_matrices,
    norms,
    turaev_viro_evaluation,
    scans
);
criterion_main!(benches);
