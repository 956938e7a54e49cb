//! Batched filled solves: data-parallel (`batch_fill`, rayon when the
//! `parallel` feature is on) versus the explicit sequential baseline
//! (`batch_fill_sequential`), over a sweep of surgeries on the
//! figure-eight knot complement and on the napoleon manifold.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cusped::experiments::{batch_fill, batch_fill_sequential};
use cusped::solver::solve_complete;
use cusped::triangulation::census;

fn surgery_sweep(n_cusps: usize, cusp: usize) -> Vec<Vec<Option<(f64, f64)>>> {
    // Stay clear of the exceptional slopes of small surgeries: every
    // (p, 1) with p >= 5 is hyperbolic on both census manifolds.
    let mut specs = Vec::new();
    for p in 5..21 {
        let mut fill = vec![None; n_cusps];
        fill[cusp] = Some((p as f64, 1.0));
        specs.push(fill);
    }
    specs
}

fn bench_batch_fill(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_fill");
    group.sample_size(10);
    for name in ["fig8", "napoleon"] {
        let tri = census(name).unwrap();
        let hint = solve_complete(&tri).unwrap();
        let specs = surgery_sweep(tri.cusps.len(), 0);
        group.bench_with_input(BenchmarkId::new("parallel", name), &specs, |b, specs| {
            b.iter(|| {
                let results = batch_fill(&tri, specs, &hint);
                assert!(results.iter().all(|r| r.is_ok()));
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", name), &specs, |b, specs| {
            b.iter(|| {
                let results = batch_fill_sequential(&tri, specs, &hint);
                assert!(results.iter().all(|r| r.is_ok()));
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batch_fill);
criterion_main!(benches);
