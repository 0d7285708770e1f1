//! Sequential versus parallel execution of the brute-force scans.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pivotforge::objectives::LowerBoundPolynomial;
use pivotforge::sat::{brute_force_max, random_formula, reduce};
use pivotforge::structure::{check_decomposable, check_uso, induce_orientation_with};
use pivotforge::verify::verify_uniqueness;
use pivotforge::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn face_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("face_scan");
    group.sample_size(10);
    for n in [6usize, 8] {
        let o = induce_orientation_with(&LowerBoundPolynomial::new(n), Execution::Sequential).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &o, |b, o| {
                b.iter(|| {
                    black_box(check_uso(o, mode)).unwrap();
                    black_box(check_decomposable(o, mode)).unwrap();
                })
            });
        }
    }
    group.finish();
}

fn orientation(c: &mut Criterion) {
    let mut group = c.benchmark_group("induce_orientation");
    group.sample_size(10);
    let f = LowerBoundPolynomial::new(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, 10), |b| {
            b.iter(|| black_box(induce_orientation_with(&f, mode)))
        });
    }
    group.finish();
}

fn vertex_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_scan");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let formula = loop {
        let f = random_formula(&mut rng, 16, 20);
        if f.n_vars() >= 14 {
            break f;
        }
    };
    let poly = reduce(&formula);
    for (name, mode) in MODES {
        group.bench_function(
            BenchmarkId::new(format!("brute_force_max/{name}"), formula.n_vars()),
            |b| b.iter(|| black_box(brute_force_max(&poly, mode))),
        );
        group.bench_function(BenchmarkId::new(format!("uniqueness/{name}"), 10), |b| {
            b.iter(|| black_box(verify_uniqueness(10, mode)))
        });
    }
    group.finish();
}

criterion_group!(benches, face_scans, orientation, vertex_scans);
criterion_main!(benches);
