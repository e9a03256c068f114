//! Seeded random instance generators shared by the test and acceptance suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::groups::{coboundary, generate_closure, presets, AffineIsometry, Cocycle, GroupElements, LinearIsometry};
use crate::oracles::random_matrix;
use crate::spaces::{Point, PointSet, SpaceSpec};

pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.25..2.0)).collect()
}

pub fn random_coords<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..=scale)).collect()
}

/// A weighted ℓ¹ instance with `1 ≤ n ≤ max_n` and `1 ≤ |A| ≤ max_m`.
pub fn random_weighted_instance<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> PointSet {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let space = SpaceSpec::weighted_l1(random_weights(rng, n)).expect("positive weights");
    let pts = (0..m).map(|_| random_coords(rng, n, 2.0)).collect();
    PointSet::from_coords(space, pts).expect("finite points")
}

/// Points with small integer coordinates, which produce large centre sets.
pub fn random_lattice_instance<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> PointSet {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let space = SpaceSpec::weighted_l1(random_weights(rng, n)).expect("positive weights");
    let pts = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-2i32..=2) as f64).collect()).collect();
    PointSet::from_coords(space, pts).expect("finite points")
}

fn random_signed_permutation<R: Rng>(rng: &mut R, n: usize) -> (Vec<usize>, Vec<i8>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    (perm, signs)
}

/// Orbit representative of each coordinate under the given permutations.
fn coordinate_orbits(n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for p in perms {
            for i in 0..n {
                let m = label[i].min(label[p[i]]);
                if label[i] != m || label[p[i]] != m {
                    label[i] = m;
                    label[p[i]] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// A finite signed-permutation group of order `≤ max_order` on a weighted ℓ¹
/// space of dimension `n`, with weights constant on coordinate orbits.
pub fn random_signed_permutation_group<R: Rng>(rng: &mut R, n: usize, max_order: usize) -> GroupElements {
    loop {
        let k = rng.gen_range(1..=2);
        let gens: Vec<(Vec<usize>, Vec<i8>)> = (0..k).map(|_| random_signed_permutation(rng, n)).collect();
        let perms: Vec<Vec<usize>> = gens.iter().map(|g| g.0.clone()).collect();
        let orbit = coordinate_orbits(n, &perms);
        let per_orbit = random_weights(rng, n);
        let weights = (0..n).map(|i| per_orbit[orbit[i]]).collect();
        let space = SpaceSpec::weighted_l1(weights).expect("positive weights");
        let affine: Vec<AffineIsometry> = gens
            .into_iter()
            .map(|(p, s)| {
                let lin = LinearIsometry::signed_permutation(p, s).expect("valid permutation");
                AffineIsometry::linear(&space, lin).expect("weight-compatible")
            })
            .collect();
        if let Ok(g) = generate_closure(&space, &affine, max_order) {
            return g;
        }
    }
}

/// The union of the orbits of `count` random points.
pub fn random_orbit_set<R: Rng>(rng: &mut R, group: &GroupElements, count: usize) -> PointSet {
    let n = group.space().dim();
    let mut pts = Vec::new();
    for _ in 0..count {
        let x = random_coords(rng, n, 2.0);
        for g in group.elements() {
            pts.push(Point::new(g.apply(&x)).expect("finite"));
        }
    }
    PointSet::new(group.space().clone(), pts).expect("non-empty").dedup(1e-12)
}

/// A random coboundary over either a signed-permutation group or a small
/// unitary conjugation group.
pub fn random_coboundary<R: Rng>(rng: &mut R, trace_class: bool) -> Cocycle {
    let group = if trace_class {
        let gens = if rng.gen_bool(0.5) { presets::pauli() } else { presets::clock_and_shift(3) };
        presets::conjugation_group(&gens, 100).expect("finite preset")
    } else {
        let n = rng.gen_range(1..=4);
        random_signed_permutation_group(rng, n, 24)
    };
    let v0 = match group.space().kind() {
        crate::spaces::SpaceKind::TraceClass { dim } => Point::from_matrix(&random_matrix(rng, dim, 1.0)),
        _ => Point::new(random_coords(rng, group.space().dim(), 2.0)).expect("finite"),
    };
    coboundary(&group, &v0).expect("consistent dimensions")
}

/// `(V, V₀, A)` with `A` given in `V` coordinates.
pub fn random_embedded_instance<R: Rng>(rng: &mut R) -> (SpaceSpec, SpaceSpec, Vec<Point>) {
    let nv = rng.gen_range(1..=4);
    let n0 = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=6);
    let v = SpaceSpec::weighted_l1(random_weights(rng, nv)).expect("positive weights");
    let v0 = SpaceSpec::weighted_l1(random_weights(rng, n0)).expect("positive weights");
    let pts = (0..m).map(|_| Point::new(random_coords(rng, nv, 2.0)).expect("finite")).collect();
    (v, v0, pts)
}
