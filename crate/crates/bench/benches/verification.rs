use criterion::{criterion_group, criterion_main, Criterion};

use knotfield_bench::{figure_eight_family, numeric_field};
use knotfield_core::verify::{fibration_scan, track_braid, verify_nodal_on_sphere, ScanOptions};
use knotfield_core::VerifyOptions;

fn verification(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let f3 = numeric_field(&figure_eight_family(3));
    let f7 = numeric_field(&figure_eight_family(7));
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("track_braid_s3", |b| b.iter(|| track_braid(&f3, &opts).unwrap()));
    group.bench_function("track_braid_s7", |b| b.iter(|| track_braid(&f7, &opts).unwrap()));
    group.bench_function("nodal_on_sphere_s3", |b| b.iter(|| verify_nodal_on_sphere(&f3, &opts).unwrap()));

    let nodal = verify_nodal_on_sphere(&f3, &opts).unwrap();
    let points: Vec<[f64; 4]> = nodal.points().collect();
    let scan = ScanOptions { samples: 20_000, ..ScanOptions::default() };
    group.bench_function("fibration_scan_s3_20k", |b| b.iter(|| fibration_scan(&f3, points.iter().copied(), &scan)));
    group.finish();
}

criterion_group!(benches, verification);
criterion_main!(benches);
