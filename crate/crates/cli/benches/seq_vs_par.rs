//! Sequential against parallel execution of the data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar};
use hypergeom::coefficient_identity_batch;
use periods::{period_quadrature, QuadratureOptions};
use threefold::{count_w, CountMethod};
use toric::{family_facets, shift_facets, vertices_from_facets, FacetFamily};

const MODES: [(&str, Exec); 2] = [("seq", Exec::Sequential), ("par", Exec::Parallel)];

fn bench_count_w(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_w");
    let alpha = ExactScalar::from(3);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "k=1 q=31"), |b| {
            b.iter(|| count_w(1, black_box(&alpha), 31, CountMethod::Char, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_charsum(c: &mut Criterion) {
    let mut g = c.benchmark_group("charsum_y");
    let alpha = ExactScalar::from(5);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "k=2 q=100003"), |b| {
            b.iter(|| pencil::charsum_y(2, black_box(&alpha), 100_003, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("period_quadrature");
    g.sample_size(10);
    let alpha = BigComplex::from_f64(1e-9, 0.0, 256);
    for (name, exec) in MODES {
        let opts = QuadratureOptions {
            exec,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::new(name, "k=1 a=1e-9"), |b| {
            b.iter(|| period_quadrature(1, black_box(&alpha), &opts).unwrap())
        });
    }
    g.finish();
}

fn bench_vertices(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertex_enumeration");
    let facets = shift_facets(
        &family_facets(2, FacetFamily::TenFacet).unwrap(),
        &ExactScalar::new(1, 4),
    );
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "k=2 eps=1/4"), |b| {
            b.iter(|| vertices_from_facets(4, black_box(&facets), exec).unwrap())
        });
    }
    g.finish();
}

fn bench_identity(c: &mut Criterion) {
    let mut g = c.benchmark_group("coefficient_identity");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "k<=6 j<=40"), |b| {
            b.iter(|| coefficient_identity_batch(exec, 6, 40).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_count_w,
    bench_charsum,
    bench_quadrature,
    bench_vertices,
    bench_identity
);
criterion_main!(benches);
