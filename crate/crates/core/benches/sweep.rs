//! Benchmarks the genus sweep: `optimize_range` (data-parallel over
//! genera when the `parallel` feature is on) against an explicit
//! sequential loop over the same table-backed optimizer. Run the suite
//! once with default features and once with `--no-default-features` to
//! compare the two execution modes of the library path; the hand-rolled
//! loop is the single-threaded floor in both builds.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use irrk3::bound::{optimize_bound_with, optimize_range, BoundCertificate, PlanTable};

fn sequential_sweep(lo: u64, hi: u64) -> Vec<BoundCertificate> {
    let table = PlanTable::up_to(hi).expect("budget in range");
    (lo..=hi)
        .map(|g| optimize_bound_with(&table, g).expect("genus in range"))
        .collect()
}

fn bench_sweep(c: &mut Criterion) {
    // The two paths must agree exactly before timing means anything.
    let reference = sequential_sweep(2, 600);
    let library = optimize_range(2, 600, true).expect("sweep succeeds");
    assert_eq!(reference, library);

    let mut group = c.benchmark_group("sweep");
    for &hi in &[200u64, 600, 1200] {
        group.bench_function(format!("optimize_range/2..={hi}"), |b| {
            b.iter(|| optimize_range(2, black_box(hi), true).unwrap())
        });
        group.bench_function(format!("sequential_loop/2..={hi}"), |b| {
            b.iter(|| sequential_sweep(2, black_box(hi)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
