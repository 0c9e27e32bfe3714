use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcform::{
    char_poly, kron_minpoly_direct, kron_minpoly_symbolic, lrs_product_poly, minpoly, pcf_build, rat, EigSpec, Poly,
    WedgeContext,
};
use pcform_bench::{dense_complex, dense_rational, jordan_type, scramble};
use std::hint::black_box;

fn minimal_polynomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("minpoly");
    for n in [4usize, 8, 12] {
        let q = dense_rational(n);
        let z = dense_complex(n);
        g.bench_with_input(BenchmarkId::new("krylov_q", n), &q, |b, a| b.iter(|| minpoly(black_box(a))));
        g.bench_with_input(BenchmarkId::new("berkowitz_q", n), &q, |b, a| b.iter(|| char_poly(black_box(a))));
        g.bench_with_input(BenchmarkId::new("numeric_c", n), &z, |b, a| b.iter(|| minpoly(black_box(a))));
    }
    g.finish();
}

fn canonical_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("pcf_build");
    for n in [4usize, 8, 12] {
        let q = dense_rational(n);
        let z = dense_complex(n);
        g.bench_with_input(BenchmarkId::new("q", n), &q, |b, a| b.iter(|| pcf_build(black_box(a)).unwrap()));
        g.bench_with_input(BenchmarkId::new("c", n), &z, |b, a| b.iter(|| pcf_build(black_box(a)).unwrap()));
    }
    g.finish();
}

fn kronecker_minpoly(c: &mut Criterion) {
    let mut g = c.benchmark_group("kron_minpoly");
    g.sample_size(10);
    let a = scramble(&jordan_type(&[(2, 3), (1, 1)]), 8);
    let b = scramble(&jordan_type(&[(-1, 2), (3, 2)]), 8);
    let c3 = scramble(&jordan_type(&[(1, 2), (2, 1)]), 6);
    let mats = vec![a, b, c3];
    let ctx = WedgeContext::new(0).unwrap();
    g.bench_function("symbolic", |bch| {
        bch.iter(|| {
            let specs: Vec<_> = mats.iter().map(|m| EigSpec::from_matrix(m).unwrap()).collect();
            kron_minpoly_symbolic(black_box(&specs), &ctx).unwrap()
        })
    });
    g.bench_function("direct", |bch| bch.iter(|| kron_minpoly_direct(black_box(&mats)).unwrap()));
    g.finish();
}

fn sequence_products(c: &mut Criterion) {
    let fib = Poly::new((), vec![rat(-1, 1), rat(-1, 1), rat(1, 1)]);
    let sq = Poly::new((), vec![rat(4, 1), rat(-4, 1), rat(1, 1)]);
    let polys = vec![fib.clone(), sq, fib];
    let ctx = WedgeContext::new(0).unwrap();
    c.bench_function("lrs_product_poly", |b| b.iter(|| lrs_product_poly(black_box(&polys), &ctx).unwrap()));
}

criterion_group!(benches, minimal_polynomials, canonical_forms, kronecker_minpoly, sequence_products);
criterion_main!(benches);
