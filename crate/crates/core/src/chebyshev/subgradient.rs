//! Subgradient descent on `f(v) = max_a ‖v − a‖`.
//!
//! The problem is unconstrained, so the projection step is the identity.
//! Steps follow `R/√k` along the normalized subgradient of the farthest
//! point, with `R` the diameter of `A`. The budget is split into epochs;
//! each epoch restarts from the best iterate so far with `R` halved, which
//! keeps the diminishing-step guarantee inside every epoch while letting
//! sharp (polyhedral) instances converge much faster than one long run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{active_set, CentreResult, Method};
use crate::error::{Error, Result};
use crate::spaces::{Point, PointSet};

const EPOCHS: usize = 12;
/// Restart jitter, as a fraction of the epoch radius.
const JITTER: f64 = 1e-3;

pub fn subgradient_centre(points: &PointSet, iters: usize, seed: u64) -> Result<CentreResult> {
    if iters == 0 {
        return Err(Error::input("subgradient_centre needs iters >= 1"));
    }
    let space = points.space();
    let diameter = points.diameter();
    let lower = diameter / 2.0;
    if diameter == 0.0 {
        return Ok(CentreResult {
            radius: 0.0,
            centre: points.points()[0].clone(),
            active: (0..points.len()).collect(),
            method: Method::Subgradient,
            gap: 0.0,
        });
    }
    let f = |x: &[f64]| -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, a) in points.points().iter().enumerate() {
            let d = space.distance(x, a);
            if d > best.0 {
                best = (d, i);
            }
        }
        best
    };

    // Members of A are admissible starting guesses too; with 0 ∈ A this
    // already guarantees f(best) ≤ sup_a ‖a‖.
    let mut best_x: Vec<f64> = points.barycenter().into_coords();
    let mut best_f = f(&best_x).0;
    for a in points.points() {
        let fa = f(a).0;
        if fa < best_f {
            best_f = fa;
            best_x = a.to_vec();
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let epochs = EPOCHS.min(iters);
    let per_epoch = iters / epochs;
    let mut radius = diameter;
    let dim = best_x.len();
    for epoch in 0..epochs {
        let len = if epoch + 1 == epochs { iters - per_epoch * (epochs - 1) } else { per_epoch };
        let mut x = best_x.clone();
        if epoch > 0 {
            let amp = JITTER * radius / (dim as f64).sqrt();
            for xi in &mut x {
                *xi += amp * rng.gen_range(-1.0..=1.0);
            }
        }
        for k in 1..=len {
            let (fx, far) = f(&x);
            if fx < best_f {
                best_f = fx;
                best_x.clone_from(&x);
            }
            let diff: Vec<f64> = x.iter().zip(points.points()[far].iter()).map(|(x, a)| x - a).collect();
            let g = space.norm_subgradient(&diff);
            let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gnorm == 0.0 {
                break;
            }
            let step = radius / (k as f64).sqrt() / gnorm;
            for (xi, gi) in x.iter_mut().zip(&g) {
                *xi -= step * gi;
            }
        }
        let (fx, _) = f(&x);
        if fx < best_f {
            best_f = fx;
            best_x.clone_from(&x);
        }
        radius *= 0.5;
    }

    let centre = Point::new(best_x)?;
    let active = active_set(points, &centre, best_f);
    Ok(CentreResult { radius: best_f, centre, active, method: Method::Subgradient, gap: (best_f - lower).max(0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;

    #[test]
    fn singleton_is_exact() {
        let s = SpaceSpec::l1(2).unwrap();
        let a = PointSet::from_coords(s, vec![vec![3.0, 4.0]]).unwrap();
        let r = subgradient_centre(&a, 1, 0).unwrap();
        assert_eq!((r.radius, r.gap), (0.0, 0.0));
    }

    #[test]
    fn diagonal_pair_converges() {
        let s = SpaceSpec::weighted_l1(vec![0.5, 0.5]).unwrap();
        let a = PointSet::from_coords(s, vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let r = subgradient_centre(&a, 10_000, 7).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-3);
        assert!(subgradient_centre(&a, 0, 0).is_err());
    }
}
