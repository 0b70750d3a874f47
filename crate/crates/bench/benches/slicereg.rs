use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slicereg::verify::{check_grf_invariance, check_identity_suite};
use slicereg::{
    cauchy_kernel, eval, ext_from_holomorphic, poly_roots, restrict, star_poly, ImaginaryUnit, Quaternion, SliceExpr,
};
use slicereg_bench::{points, poly};

fn bench_quaternion(c: &mut Criterion) {
    let (a, b) = (Quaternion::new(0.3, -1.2, 0.7, 2.0), Quaternion::new(-0.4, 0.1, 1.1, -0.6));
    c.bench_function("hamilton_product", |bench| bench.iter(|| black_box(a) * black_box(b)));
    c.bench_function("cauchy_kernel", |bench| bench.iter(|| cauchy_kernel(black_box(a), black_box(b))));
}

fn bench_eval(c: &mut Criterion) {
    let pts = points(64, 3);
    let f = SliceExpr::poly(poly(8, 1));
    let g = SliceExpr::poly(poly(8, 2));
    let exprs = [
        ("poly", f.clone()),
        ("star", f.star(&g)),
        ("recip", f.recip()),
        ("nested", f.star(&g).conj().star(&f.symm()).recip()),
        ("ext", ext_from_holomorphic(restrict(&f, ImaginaryUnit::J)).unwrap()),
    ];
    let mut group = c.benchmark_group("eval");
    for (name, e) in &exprs {
        group.bench_with_input(BenchmarkId::from_parameter(name), e, |bench, e| {
            bench.iter(|| pts.iter().map(|&q| eval(e, q).map(|v| v.x0).unwrap_or(0.0)).sum::<f64>())
        });
    }
    group.finish();
}

fn bench_polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("polynomial");
    for degree in [4, 16, 64] {
        let (f, g) = (poly(degree, 1), poly(degree, 2));
        group.bench_with_input(BenchmarkId::new("star_poly", degree), &degree, |bench, _| {
            bench.iter(|| star_poly(black_box(&f), black_box(&g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("poly_roots", degree), &degree, |bench, _| {
            bench.iter(|| poly_roots(black_box(&f), 1e-8).unwrap())
        });
    }
    group.finish();
}

fn bench_checks(c: &mut Criterion) {
    let f = SliceExpr::poly(poly(5, 1));
    let g = SliceExpr::poly(poly(5, 2));
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("grf_100x8", |bench| bench.iter(|| check_grf_invariance(&f, 100, 8, 7).unwrap()));
    group.bench_function("identities_100", |bench| bench.iter(|| check_identity_suite(&f, &g, 100, 7)));
    group.finish();
}

criterion_group!(benches, bench_quaternion, bench_eval, bench_polynomials, bench_checks);
criterion_main!(benches);
