use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heisenhardy::distance::{delta_c, delta_k, omega};
use heisenhardy::hardy::{minimize_quotient, weight_field};
use heisenhardy::plane_gauge::{cardano_root, CubicCoeffs};
use heisenhardy::{cc_distance_origin, Grid, Point, Polytope, WeightKind};
use heisenhardy_bench::{cut_cube_with_points, sample_points};

fn cc_distance(c: &mut Criterion) {
    let pts = sample_points(256);
    c.bench_function("cc_distance_origin/256", |b| {
        b.iter(|| pts.iter().map(|&z| cc_distance_origin(black_box(z)).unwrap()).sum::<f64>())
    });
}

fn cubic(c: &mut Criterion) {
    let cs: Vec<CubicCoeffs> = (1..=256).map(|i| CubicCoeffs::new(i as f64 * 0.37, 1.0 - i as f64 * 0.01).unwrap()).collect();
    c.bench_function("cardano_root/256", |b| b.iter(|| cs.iter().map(|&k| cardano_root(black_box(k))).sum::<f64>()));
}

fn boundary_distances(c: &mut Criterion) {
    let (p, pts) = cut_cube_with_points(64);
    let mut g = c.benchmark_group("boundary_distance/64");
    g.bench_function("delta_c", |b| b.iter(|| pts.iter().map(|&x| delta_c(&p, black_box(x)).unwrap()).sum::<f64>()));
    g.bench_function("delta_k", |b| b.iter(|| pts.iter().map(|&x| delta_k(&p, black_box(x)).unwrap()).sum::<f64>()));
    g.bench_function("omega", |b| b.iter(|| pts.iter().map(|&x| omega(&p, black_box(x)).unwrap()).sum::<f64>()));
    g.finish();
}

fn quotient(c: &mut Criterion) {
    let p = Polytope::cube(1.0).unwrap();
    let mut g = c.benchmark_group("minimize_quotient");
    g.sample_size(10);
    for n in [16usize, 24, 32] {
        let grid = Grid::new(&p, n).unwrap();
        let w = weight_field(&grid, &p, WeightKind::DeltaC, Point::ORIGIN).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| minimize_quotient(&grid, &w, 500).unwrap().value));
    }
    g.finish();
}

criterion_group!(benches, cc_distance, cubic, boundary_distances, quotient);
criterion_main!(benches);
