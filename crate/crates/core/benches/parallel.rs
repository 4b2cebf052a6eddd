use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qeuclid_core::geometry::Geometry;
use qeuclid_core::par;
use qeuclid_core::properties;
use qeuclid_core::representation::{check_relations, IrrepParams};
use qeuclid_core::soq3::FlipChoice;

const MODES: [(&str, bool); 2] = [("rayon", false), ("sequential", true)];

fn confluence(c: &mut Criterion) {
    let geo = Geometry::new().unwrap();
    let mut g = c.benchmark_group("confluence-60");
    g.sample_size(10);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| properties::confluence(geo.alg(), 20, 60).unwrap()));
    }
    g.finish();
}

fn curvature(c: &mut Criterion) {
    let geo = Geometry::new().unwrap();
    let mut g = c.benchmark_group("curvature-qR");
    g.sample_size(10);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| geo.curvature(FlipChoice::QR).unwrap()));
    }
    g.finish();
}

fn residuals(c: &mut Criterion) {
    let p = IrrepParams::new(1, 1.2, 1.5, 8, 6, 4).unwrap();
    let mut g = c.benchmark_group("irrep-residuals");
    g.sample_size(20);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| check_relations(&p).unwrap()));
    }
    g.finish();
    par::set_sequential(false);
}

criterion_group!(benches, confluence, curvature, residuals);
criterion_main!(benches);
