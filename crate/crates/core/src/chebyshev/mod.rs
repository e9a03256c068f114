//! Circumradius and Chebyshev centres of finite point sets.
//!
//! For a finite set `A` the circumradius is `ρ(A) = min_v max_{a∈A} ‖v − a‖`
//! and the Chebyshev centre is the set of minimizers, an intersection of
//! closed balls `⋂_a B̄(a, ρ)`. Centres are usually not unique, so every
//! routine here returns *a* centre together with enough information to
//! check membership independently.
//!
//! Polyhedral spaces (weighted ℓ¹ and ⊕₁ sums of them) go through the exact
//! LP in [`crate::lp`]. Spaces with a trace-class block use projected
//! subgradient descent and report an explicit suboptimality gap.

mod ldp;
mod subgradient;

use crate::error::{Error, Result};
use crate::lp::{build_chebyshev_lp, solve_lp, LpStatus};
use crate::spaces::{Point, PointSet};

pub use subgradient::subgradient_centre;

/// Default iteration budget of the subgradient route.
pub const DEFAULT_SUBGRADIENT_ITERS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Lp,
    Subgradient,
}

/// How to pick one point out of a non-singleton centre set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Selection {
    /// Whatever vertex the simplex stops at.
    AnyVertex,
    /// The centre closest in Euclidean distance to the barycenter of `A`.
    #[default]
    MinL2Tiebreak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentreOptions {
    pub selection: Selection,
    /// Subgradient iterations for non-polyhedral spaces.
    pub iters: usize,
    pub seed: u64,
}

impl Default for CentreOptions {
    fn default() -> Self {
        CentreOptions { selection: Selection::default(), iters: DEFAULT_SUBGRADIENT_ITERS, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentreResult {
    /// Circumradius (an upper bound within `gap` on the subgradient route).
    pub radius: f64,
    pub centre: Point,
    /// Indices of points at distance ≥ `radius − tol` from the centre.
    pub active: Vec<usize>,
    pub method: Method,
    /// Upper bound on `radius − ρ(A)`; zero on the LP route.
    pub gap: f64,
}

pub(crate) fn active_set(points: &PointSet, centre: &[f64], radius: f64) -> Vec<usize> {
    let tol = 1e-9 * radius.max(1.0);
    points
        .points()
        .iter()
        .enumerate()
        .filter(|(_, a)| points.space().distance(centre, a) >= radius - tol)
        .map(|(i, _)| i)
        .collect()
}

pub fn circumradius(points: &PointSet) -> Result<f64> {
    Ok(chebyshev_centre_with(points, &CentreOptions { selection: Selection::AnyVertex, ..Default::default() })?
        .radius)
}

pub fn chebyshev_centre(points: &PointSet, selection: Selection) -> Result<CentreResult> {
    chebyshev_centre_with(points, &CentreOptions { selection, ..Default::default() })
}

pub fn chebyshev_centre_with(points: &PointSet, opts: &CentreOptions) -> Result<CentreResult> {
    if points.len() == 1 {
        return Ok(CentreResult {
            radius: 0.0,
            centre: points.points()[0].clone(),
            active: vec![0],
            method: if points.space().polyhedral_weights().is_some() { Method::Lp } else { Method::Subgradient },
            gap: 0.0,
        });
    }
    match points.space().polyhedral_weights() {
        Some(weights) => lp_centre(points, &weights, opts.selection),
        None => subgradient_centre(points, opts.iters, opts.seed),
    }
}

fn lp_centre(points: &PointSet, weights: &[f64], selection: Selection) -> Result<CentreResult> {
    let (lp, layout) = build_chebyshev_lp(points.space(), points)?;
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        // The minimax program is always feasible and bounded below by 0.
        return Err(Error::precondition(format!("chebyshev LP ended {:?}", sol.status)));
    }
    let radius = sol.value.max(0.0);
    let vertex: Vec<f64> = (0..layout.n).map(|i| sol.primal[layout.centre(i)]).collect();
    let centre = match selection {
        Selection::AnyVertex => vertex,
        Selection::MinL2Tiebreak => {
            let target = points.barycenter();
            match min_l2_centre(points, weights, radius, &target) {
                Some(c) if points.max_distance(&c) <= radius + 1e-9 * radius.max(1.0) => c,
                _ => vertex,
            }
        }
    };
    let centre = Point::new(centre)?;
    let active = active_set(points, &centre, radius);
    Ok(CentreResult { radius, centre, active, method: Method::Lp, gap: 0.0 })
}

/// Euclidean projection of `target` onto `{v : Σᵢ wᵢ|vᵢ − aᵢ| ≤ ρ ∀a}`.
///
/// Each ball is the intersection of the `2ⁿ` half-spaces
/// `Σᵢ wᵢsᵢ(vᵢ − aᵢ) ≤ ρ`; only the facets that the current iterate violates
/// are added, one per offending point per round.
fn min_l2_centre(points: &PointSet, weights: &[f64], radius: f64, target: &[f64]) -> Option<Vec<f64>> {
    let n = weights.len();
    let scale = radius.max(1.0);
    let mut slack = 1e-12 * scale;
    while slack <= 1e-9 * scale {
        if let Some(c) = project_with_slack(points, weights, radius + slack, target, n) {
            return Some(c);
        }
        slack *= 10.0;
    }
    None
}

fn project_with_slack(points: &PointSet, weights: &[f64], rho: f64, target: &[f64], n: usize) -> Option<Vec<f64>> {
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    let mut facets: Vec<(usize, Vec<f64>)> = Vec::new();
    let add_facet = |facets: &mut Vec<(usize, Vec<f64>)>, k: usize, s: Vec<f64>| -> bool {
        if facets.iter().any(|(j, t)| *j == k && *t == s) {
            false
        } else {
            facets.push((k, s));
            true
        }
    };
    for (k, a) in points.points().iter().enumerate() {
        let s = target.iter().zip(a.iter()).map(|(t, a)| sign(t - a)).collect();
        add_facet(&mut facets, k, s);
    }
    let tol = 1e-13 * rho.max(1.0);
    for _ in 0..500 {
        // In x = v − target:  −Σ wᵢsᵢxᵢ ≥ −(ρ + Σ wᵢsᵢ(aᵢ − targetᵢ)).
        let mut g_rows = Vec::with_capacity(facets.len());
        let mut h = Vec::with_capacity(facets.len());
        for (k, s) in &facets {
            let a = &points.points()[*k];
            g_rows.push((0..n).map(|i| -weights[i] * s[i]).collect::<Vec<f64>>());
            let shift: f64 = (0..n).map(|i| weights[i] * s[i] * (a[i] - target[i])).sum();
            h.push(-(rho + shift));
        }
        let x = ldp::least_distance(&g_rows, &h, n)?;
        let v: Vec<f64> = target.iter().zip(&x).map(|(t, x)| t + x).collect();
        let mut added = false;
        let mut violated = false;
        for (k, a) in points.points().iter().enumerate() {
            if points.space().distance(&v, a) > rho + tol {
                violated = true;
                let s = v.iter().zip(a.iter()).map(|(v, a)| sign(v - a)).collect();
                added |= add_facet(&mut facets, k, s);
            }
        }
        if !violated {
            return Some(v);
        }
        if !added {
            // Violations remain but every facet is already present: roundoff.
            return Some(v);
        }
    }
    None
}

/// Outcome of a ball-intersection membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct CentreCheck {
    pub ok: bool,
    /// `max_a ‖c − a‖`.
    pub max_distance: f64,
    /// Points farther than `r + tol`, with their distances.
    pub violations: Vec<(usize, f64)>,
}

/// Tests `c ∈ ⋂_a B̄(a, r + tol)`.
pub fn verify_centre(points: &PointSet, c: &Point, r: f64, tol: f64) -> Result<CentreCheck> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input("verify_centre needs tol > 0"));
    }
    points.space().check_point(c)?;
    let mut max_distance: f64 = 0.0;
    let mut violations = Vec::new();
    for (i, a) in points.points().iter().enumerate() {
        let d = points.space().distance(c, a);
        max_distance = max_distance.max(d);
        if d > r + tol {
            violations.push((i, d));
        }
    }
    Ok(CentreCheck { ok: violations.is_empty(), max_distance, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceSpec;
    use crate::CMatrix;

    fn diagonal_pair() -> PointSet {
        let s = SpaceSpec::weighted_l1(vec![0.5, 0.5]).unwrap();
        PointSet::from_coords(s, vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap()
    }

    #[test]
    fn singleton_has_zero_radius() {
        let s = SpaceSpec::l1(3).unwrap();
        let a = PointSet::from_coords(s, vec![vec![1.0, -2.0, 3.0]]).unwrap();
        let r = chebyshev_centre(&a, Selection::MinL2Tiebreak).unwrap();
        assert_eq!(r.radius, 0.0);
        assert_eq!(r.centre.coords(), &[1.0, -2.0, 3.0]);
        assert_eq!(circumradius(&a).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_pair_symmetric_centre() {
        let a = diagonal_pair();
        let r = chebyshev_centre(&a, Selection::MinL2Tiebreak).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-12);
        assert!((r.centre[0] - 0.5).abs() < 1e-9 && (r.centre[1] - 0.5).abs() < 1e-9, "{:?}", r.centre);
        assert_eq!(r.active, vec![0, 1]);
        assert_eq!(r.method, Method::Lp);

        let v = chebyshev_centre(&a, Selection::AnyVertex).unwrap();
        let c = &v.centre;
        assert!(c.iter().all(|&x| (-1e-9..=1.0 + 1e-9).contains(&x)));
        assert!((0.5 * c[0] + 0.5 * c[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn cross_polytope_radius_one() {
        let s = SpaceSpec::l1(2).unwrap();
        let a = PointSet::from_coords(s, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]])
            .unwrap();
        for sel in [Selection::AnyVertex, Selection::MinL2Tiebreak] {
            let r = chebyshev_centre(&a, sel).unwrap();
            assert!((r.radius - 1.0).abs() < 1e-12);
            assert!((a.max_distance(&r.centre) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_class_pair() {
        let s = SpaceSpec::trace_class(2).unwrap();
        let a = PointSet::new(s.clone(), vec![s.zero(), Point::from_matrix(&CMatrix::identity(2))]).unwrap();
        let r = chebyshev_centre(&a, Selection::MinL2Tiebreak).unwrap();
        assert_eq!(r.method, Method::Subgradient);
        assert!((r.radius - 1.0).abs() < 1e-9);
        assert!(r.gap < 1e-9);
    }

    #[test]
    fn verify_centre_examples() {
        let a = diagonal_pair();
        let p = |v: Vec<f64>| Point::new(v).unwrap();
        assert!(verify_centre(&a, &p(vec![1.0, 0.0]), 0.5, 1e-12).unwrap().ok);
        let bad = verify_centre(&a, &p(vec![1.0, 1.0]), 0.5, 1e-12).unwrap();
        assert!(!bad.ok);
        assert_eq!(bad.violations, vec![(0, 1.0)]);

        let single = PointSet::from_coords(SpaceSpec::l1(1).unwrap(), vec![vec![2.0]]).unwrap();
        assert!(verify_centre(&single, &p(vec![2.0]), 0.0, 1e-12).unwrap().ok);
        assert!(verify_centre(&single, &p(vec![2.0]), 0.0, 0.0).is_err());
    }
}
