use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use l1fixed_core::chebyshev::subgradient_centre;
use l1fixed_core::groups::presets;
use l1fixed_core::linalg::svd;
use l1fixed_core::oracles::random_matrix;
use l1fixed_core::testkit::random_coords;
use l1fixed_core::{chebyshev_centre, PointSet, Selection, SpaceSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(n: usize, m: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = SpaceSpec::l1(n).unwrap();
    PointSet::from_coords(space, (0..m).map(|_| random_coords(&mut rng, n, 2.0)).collect()).unwrap()
}

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp_centre");
    for (n, m) in [(3, 6), (6, 8), (10, 16)] {
        let a = instance(n, m, 1);
        for sel in [Selection::AnyVertex, Selection::MinL2Tiebreak] {
            group.bench_with_input(BenchmarkId::new(format!("{sel:?}"), format!("{n}x{m}")), &a, |b, a| {
                b.iter(|| chebyshev_centre(black_box(a), sel).unwrap())
            });
        }
    }
    group.finish();
}

fn subgradient(c: &mut Criterion) {
    let a = instance(6, 8, 2);
    c.bench_function("subgradient_l1_6x8_20k", |b| b.iter(|| subgradient_centre(black_box(&a), 20_000, 0).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = SpaceSpec::trace_class(2).unwrap();
    let pts = (0..4).map(|_| l1fixed_core::Point::from_matrix(&random_matrix(&mut rng, 2, 1.0))).collect();
    let m = PointSet::new(s, pts).unwrap();
    c.bench_function("subgradient_s1_2x2_20k", |b| b.iter(|| subgradient_centre(black_box(&m), 20_000, 0).unwrap()));
}

fn closure(c: &mut Criterion) {
    c.bench_function("closure_pauli", |b| b.iter(|| presets::conjugation_group(&presets::pauli(), 100).unwrap()));
    c.bench_function("closure_weyl_3", |b| {
        b.iter(|| presets::conjugation_group(&presets::clock_and_shift(3), 100).unwrap())
    });
}

fn decompositions(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in [2, 3, 6] {
        let m = random_matrix(&mut rng, d, 1.0);
        c.bench_function(&format!("svd_{d}x{d}"), |b| b.iter(|| svd(black_box(&m))));
    }
}

criterion_group!(benches, lp, subgradient, closure, decompositions);
criterion_main!(benches);
