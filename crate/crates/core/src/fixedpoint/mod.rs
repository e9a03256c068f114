//! Invariant Chebyshev centres for finite isometry groups.
//!
//! If every element of a group `G` of affine isometries maps `A` onto itself,
//! `f(x) = max_a ‖x − a‖` is `G`-invariant and convex. Averaging any centre
//! `c` over the group, `v = |G|⁻¹ Σ_g g·c`, therefore gives `f(v) ≤ f(c)`,
//! and `v` is fixed by every `g` because affine maps commute with averaging.
//! Applied to `A = b(G)` under the affine action `g·x = π(g)x + b(g)` this
//! trivializes a cocycle: `b(g) = v − π(g)v` with `‖v‖ ≤ sup_g ‖b(g)‖`.

mod derivation;

pub use derivation::{
    derivation_to_cocycle, solve_derivation, unitary_decomposition, Derivation, DerivationSolution,
};

use crate::chebyshev::{chebyshev_centre_with, CentreOptions, Method};
use crate::error::{Error, Result};
use crate::groups::{verify_cocycle, Cocycle, GroupElements};
use crate::spaces::{Point, PointSet, SpaceSpec};

/// Matching tolerance for setwise invariance and deduplication, relative to
/// the largest norm in `A` (floored at 1).
pub const INVARIANCE_TOL: f64 = 1e-9;
/// Cocycle identity tolerance required before trivializing.
pub const COCYCLE_TOL: f64 = 1e-8;
/// Slack allowed on the norm estimate.
pub const NORM_BOUND_SLACK: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointResult {
    /// The invariant point `v`.
    pub point: Point,
    /// `sup_a ‖v − a‖`.
    pub radius: f64,
    /// `max_g ‖g·v − v‖`.
    pub residual: f64,
    /// Norm estimate check; `None` when `0 ∉ A` and no bound applies.
    pub norm_bound_ok: Option<bool>,
    /// Radius reported by the centre solver before averaging.
    pub circumradius: f64,
    pub gap: f64,
    pub method: Method,
    pub group_order: usize,
}

fn matching_tol(points: &PointSet) -> f64 {
    INVARIANCE_TOL * points.max_norm().max(1.0)
}

/// Checks that every `g` permutes `A`, returning the offending `(g, a)` pairs.
fn invariance_violations(points: &PointSet, group: &GroupElements, tol: f64) -> Vec<(usize, usize)> {
    let space = points.space();
    let mut bad = Vec::new();
    for (gi, g) in group.elements().iter().enumerate() {
        let mut used = vec![false; points.len()];
        for (ai, a) in points.points().iter().enumerate() {
            let image = g.apply(a);
            let hit = points.points().iter().enumerate().position(|(j, b)| !used[j] && space.distance(&image, b) <= tol);
            match hit {
                Some(j) => used[j] = true,
                None => bad.push((gi, ai)),
            }
        }
    }
    bad
}

/// A point of the Chebyshev centre of `A` fixed by every element of `group`.
pub fn invariant_point(points: &PointSet, group: &GroupElements, opts: &CentreOptions) -> Result<FixedPointResult> {
    if points.space() != group.space() {
        return Err(Error::input(format!(
            "points live in {} but the group acts on {}",
            points.space(),
            group.space()
        )));
    }
    let tol = matching_tol(points);
    let points = points.dedup(tol);
    let bad = invariance_violations(&points, group, tol);
    if !bad.is_empty() {
        let listed: Vec<String> = bad.iter().take(8).map(|(g, a)| format!("(g{g}, a{a})")).collect();
        return Err(Error::precondition(format!(
            "A is not invariant under the group: {} image(s) fall outside A, e.g. {}",
            bad.len(),
            listed.join(", ")
        )));
    }
    let centre = chebyshev_centre_with(&points, opts)?;
    let space = points.space();
    let mut acc = vec![0.0; space.dim()];
    for g in group.elements() {
        for (s, x) in acc.iter_mut().zip(g.apply(&centre.centre)) {
            *s += x;
        }
    }
    let inv = 1.0 / group.order() as f64;
    let v = Point::new(acc.into_iter().map(|s| s * inv).collect())?;
    let residual = group.elements().iter().map(|g| space.distance(&g.apply(&v), &v)).fold(0.0, f64::max);
    let radius = points.max_distance(&v);
    let contains_origin = points.points().iter().any(|a| a.iter().all(|x| x.abs() <= tol));
    let norm_bound_ok = contains_origin
        .then(|| space.norm_of(&v) <= points.max_norm() + centre.gap + NORM_BOUND_SLACK);
    Ok(FixedPointResult {
        point: v,
        radius,
        residual,
        norm_bound_ok,
        circumradius: centre.radius,
        gap: centre.gap,
        method: centre.method,
        group_order: group.order(),
    })
}

/// Finds `v` with `b(g) = v − π(g)v` for all `g` and `‖v‖ ≤ sup_g ‖b(g)‖`.
///
/// `residual` in the result is the worst reconstruction error
/// `‖b(g) − (v − π(g)v)‖`, which equals `max_g ‖g·v − v‖` for the affine action.
pub fn trivialize_cocycle(b: &Cocycle, opts: &CentreOptions) -> Result<FixedPointResult> {
    let sup = b.sup_norm();
    let check = verify_cocycle(b, COCYCLE_TOL * sup.max(1.0));
    if !check.ok {
        let (g, h) = check.worst_pair.unwrap_or((0, 0));
        return Err(Error::precondition(format!(
            "cocycle identity fails by {:.3e} at (g{g}, h{h})",
            check.worst
        )));
    }
    let affine = b.affine_group();
    let orbit = PointSet::new(b.group().space().clone(), b.values().to_vec())?;
    let mut result = invariant_point(&orbit, &affine, opts)?;
    let space = b.group().space();
    let v = &result.point;
    let reconstruction = b
        .group()
        .elements()
        .iter()
        .zip(b.values())
        .map(|(g, bg)| {
            let moved = g.linear.apply(v);
            let diff: Vec<f64> = (0..space.dim()).map(|i| bg[i] - (v[i] - moved[i])).collect();
            space.norm_of(&diff)
        })
        .fold(0.0, f64::max);
    result.residual = result.residual.max(reconstruction);
    result.norm_bound_ok = Some(space.norm_of(v) <= sup + NORM_BOUND_SLACK);
    Ok(result)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedCentreReport {
    /// Circumradius of `A` inside `W = V ⊕₁ V₀`.
    pub radius_w: f64,
    /// Circumradius of `A` inside `V`.
    pub radius_v: f64,
    /// Centre found in `W`.
    pub centre_w: Point,
    /// Its `V` and `V₀` blocks.
    pub centre_v_block: Point,
    pub centre_v0_block: Point,
    /// `‖c_{V₀}‖`.
    pub v0_norm: f64,
    /// `|ρ_W − ρ_V|`.
    pub radius_diff: f64,
    pub gap: f64,
}

impl EmbeddedCentreReport {
    /// Centre localized in `V` and radii equal, at the given tolerances.
    pub fn localized(&self, v0_tol: f64, radius_tol: f64) -> bool {
        self.v0_norm <= v0_tol && self.radius_diff <= radius_tol + self.gap
    }
}

/// Solves for a centre of `A ⊂ V` inside `V ⊕₁ V₀` and measures how much of it
/// lands in `V₀`.
///
/// `points` may be given in `V` coordinates or in `W` coordinates with a zero
/// `V₀` block.
pub fn check_embedded_centre(
    v_space: &SpaceSpec,
    v0_space: &SpaceSpec,
    points: &[Point],
    opts: &CentreOptions,
) -> Result<EmbeddedCentreReport> {
    let w_space = SpaceSpec::direct_sum(vec![v_space.clone(), v0_space.clone()])?;
    let dv = v_space.dim();
    let mut in_v = Vec::with_capacity(points.len());
    let mut in_w = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if p.len() == dv {
            in_v.push(p.clone());
            let mut padded = p.to_vec();
            padded.resize(w_space.dim(), 0.0);
            in_w.push(Point::new(padded)?);
        } else if p.len() == w_space.dim() {
            if p[dv..].iter().any(|&x| x != 0.0) {
                return Err(Error::input(format!("point {i} has a nonzero V0 block")));
            }
            in_v.push(Point::new(p[..dv].to_vec())?);
            in_w.push(p.clone());
        } else {
            return Err(Error::input(format!(
                "point {i} has {} coordinates; expected {dv} (V) or {} (V (+) V0)",
                p.len(),
                w_space.dim()
            )));
        }
    }
    let a_v = PointSet::new(v_space.clone(), in_v)?;
    let a_w = PointSet::new(w_space.clone(), in_w)?;
    let cw = chebyshev_centre_with(&a_w, opts)?;
    let cv = chebyshev_centre_with(&a_v, opts)?;
    let centre_v_block = Point::new(cw.centre[..dv].to_vec())?;
    let centre_v0_block = Point::new(cw.centre[dv..].to_vec())?;
    let v0_norm = v0_space.norm_of(&centre_v0_block);
    Ok(EmbeddedCentreReport {
        radius_w: cw.radius,
        radius_v: cv.radius,
        centre_w: cw.centre,
        centre_v_block,
        centre_v0_block,
        v0_norm,
        radius_diff: (cw.radius - cv.radius).abs(),
        gap: cw.gap.max(cv.gap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{coboundary, generate_closure, AffineIsometry, LinearIsometry};

    fn diagonal_pair() -> PointSet {
        let s = SpaceSpec::weighted_l1(vec![0.5, 0.5]).unwrap();
        PointSet::from_coords(s, vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap()
    }

    fn swap_group(space: &SpaceSpec) -> GroupElements {
        let s = AffineIsometry::linear(space, LinearIsometry::permutation(vec![1, 0]).unwrap()).unwrap();
        generate_closure(space, &[s], 10).unwrap()
    }

    #[test]
    fn trivial_group_returns_the_centre() {
        let a = diagonal_pair();
        let id = AffineIsometry::identity(a.space());
        let g = generate_closure(a.space(), &[id], 10).unwrap();
        let opts = CentreOptions::default();
        let r = invariant_point(&a, &g, &opts).unwrap();
        let c = chebyshev_centre_with(&a, &opts).unwrap();
        assert_eq!(r.point, c.centre);
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.norm_bound_ok, Some(true));
    }

    #[test]
    fn diagonal_pair_symmetric_fixed_point() {
        let a = diagonal_pair();
        let opts = CentreOptions { selection: crate::Selection::AnyVertex, ..Default::default() };
        let r = invariant_point(&a, &swap_group(a.space()), &opts).unwrap();
        assert!((r.point[0] - 0.5).abs() < 1e-12 && (r.point[1] - 0.5).abs() < 1e-12);
        assert!((r.radius - 0.5).abs() < 1e-12);
        assert!(r.residual < 1e-15);
    }

    #[test]
    fn non_invariant_set_names_the_pair() {
        let s = SpaceSpec::l1(2).unwrap();
        let a = PointSet::from_coords(s.clone(), vec![vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let err = invariant_point(&a, &swap_group(&s), &CentreOptions::default()).unwrap_err();
        match err {
            Error::Precondition(m) => assert!(m.contains("(g1, a0)"), "{m}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn swap_cocycle_example() {
        let s = SpaceSpec::l1(2).unwrap();
        let g = swap_group(&s);
        let b = Cocycle::new(g, vec![s.zero(), Point::new(vec![1.0, -1.0]).unwrap()]).unwrap();
        let r = trivialize_cocycle(&b, &CentreOptions::default()).unwrap();
        assert!((r.point[0] - 0.5).abs() < 1e-12 && (r.point[1] + 0.5).abs() < 1e-12, "{:?}", r.point);
        assert!(r.residual < 1e-12);
        assert!((s.norm_of(&r.point) - 1.0).abs() < 1e-12);
        assert_eq!(r.norm_bound_ok, Some(true));
    }

    #[test]
    fn zero_and_broken_cocycles() {
        let s = SpaceSpec::l1(2).unwrap();
        let g = swap_group(&s);
        let zero = coboundary(&g, &s.zero()).unwrap();
        let r = trivialize_cocycle(&zero, &CentreOptions::default()).unwrap();
        assert_eq!(r.point.coords(), &[0.0, 0.0]);

        let broken = Cocycle::new(g, vec![s.zero(), Point::new(vec![1.0, 0.0]).unwrap()]).unwrap();
        assert!(matches!(trivialize_cocycle(&broken, &CentreOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn embedded_centre_examples() {
        let v = SpaceSpec::weighted_l1(vec![0.5, 0.5]).unwrap();
        let v0 = SpaceSpec::l1(1).unwrap();
        let pts = diagonal_pair().points().to_vec();
        let rep = check_embedded_centre(&v, &v0, &pts, &CentreOptions::default()).unwrap();
        assert!(rep.v0_norm <= 1e-12);
        assert!((rep.radius_w - 0.5).abs() < 1e-12 && rep.radius_diff < 1e-12);
        assert!(rep.localized(1e-6, 1e-9));

        let single = vec![Point::new(vec![2.0, -1.0, 0.0]).unwrap()];
        let rep = check_embedded_centre(&v, &v0, &single, &CentreOptions::default()).unwrap();
        assert_eq!(rep.centre_w.coords(), &[2.0, -1.0, 0.0]);

        let bad = vec![Point::new(vec![0.0, 0.0, 1.0]).unwrap()];
        assert!(matches!(check_embedded_centre(&v, &v0, &bad, &CentreOptions::default()), Err(Error::Input(_))));
    }
}
