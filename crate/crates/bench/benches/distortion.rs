use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use distort_core::distortion::{shadow, sup_search, thickness, DEFAULT_TOL_ARGMAX};
use distort_core::generators::{make_ngon, make_torus_knot};

fn bench_sup_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("sup_search");
    g.sample_size(10);
    for n in [64, 256, 1024] {
        let curve = make_ngon(n, 1.0).unwrap();
        g.bench_with_input(BenchmarkId::new("ngon", n), &curve, |b, c| {
            b.iter(|| sup_search(black_box(c), DEFAULT_TOL_ARGMAX))
        });
    }
    let trefoil = make_torus_knot(2, 3, 128, (2.0, 1.0)).unwrap();
    g.bench_function("trefoil_128", |b| b.iter(|| sup_search(black_box(&trefoil), DEFAULT_TOL_ARGMAX)));
    g.finish();
}

fn bench_shadow(c: &mut Criterion) {
    let mut g = c.benchmark_group("shadow");
    g.sample_size(10);
    let curve = make_ngon(256, 1.0).unwrap();
    for density in [64.0, 256.0] {
        g.bench_with_input(BenchmarkId::new("ngon_256", density), &density, |b, &d| {
            b.iter(|| shadow(black_box(&curve), d).unwrap())
        });
    }
    g.finish();
}

fn bench_thickness(c: &mut Criterion) {
    let trefoil = make_torus_knot(2, 3, 64, (2.0, 1.0)).unwrap();
    c.bench_function("thickness/trefoil_64", |b| b.iter(|| thickness(black_box(&trefoil), 2.0).unwrap()));
}

criterion_group!(benches, bench_sup_search, bench_shadow, bench_thickness);
criterion_main!(benches);
