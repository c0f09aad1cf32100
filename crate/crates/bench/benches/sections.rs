use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopf_bench::{forms, monomial_families, section_cases};
use hopf_core::analysis::monomial_nonsingular;
use hopf_core::classifier::classify_catalogue;
use hopf_core::cohomology::{oracle_dimension, section_basis, section_dimension_closed_form};
use hopf_core::exterior::{exterior_derivative, is_decomposable};
use hopf_core::{EigenvalueStructure, LineBundle};
use std::hint::black_box;

fn sections(c: &mut Criterion) {
    let mut group = c.benchmark_group("sections");
    for (name, s, k, b) in section_cases() {
        let guard = (b.total_degree() - k as i64) as u32;
        let bundle = LineBundle::Monomial(b.clone());
        group.bench_with_input(BenchmarkId::new("basis", name), &(s, k), |bench, (s, k)| {
            bench.iter(|| section_basis(s, *k, black_box(&bundle), guard).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed-form", name), &(s, k), |bench, (s, k)| {
            bench.iter(|| section_dimension_closed_form(s, *k, black_box(&b)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", name), &(s, k), |bench, (s, k)| {
            bench.iter(|| oracle_dimension(s, *k, black_box(&b), b.total_degree() as u32).unwrap())
        });
    }
    group.finish();
}

fn exterior(c: &mut Criterion) {
    let mut group = c.benchmark_group("exterior");
    for (name, f) in forms() {
        group.bench_function(BenchmarkId::new("decomposable", name), |bench| {
            bench.iter(|| is_decomposable(black_box(&f)).unwrap())
        });
        group.bench_function(BenchmarkId::new("d", name), |bench| {
            bench.iter(|| exterior_derivative(black_box(&f)))
        });
    }
    group.finish();
}

fn zero_locus(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero-locus");
    for (name, family) in monomial_families() {
        group.bench_function(name, |bench| {
            bench.iter(|| monomial_nonsingular(8, black_box(&family)).unwrap())
        });
    }
    group.finish();
}

fn catalogue(c: &mut Criterion) {
    let s = EigenvalueStructure::intermediary(5, 3).unwrap();
    c.bench_function("catalogue/intermediary-n5-r3-k2-bound5", |bench| {
        bench.iter(|| classify_catalogue(black_box(&s), 2, 5).unwrap())
    });
}

criterion_group!(benches, sections, exterior, zero_locus, catalogue);
criterion_main!(benches);
