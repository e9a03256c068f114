//! Finite-dimensional L1-type normed spaces.
//!
//! Three kinds are supported: weighted ℓ¹ over `n` coordinates (a finite
//! measure space), complex `d×d` matrices under the trace norm (the predual
//! of a full matrix algebra), and ⊕₁ direct sums of these, whose norm is the
//! sum of the summand norms. Points are flat real vectors; matrix entries are
//! stored row-major as interleaved `(re, im)` pairs.

use std::fmt;
use std::ops::{Deref, Range};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub use crate::linalg::singular_values;

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    WeightedL1(Vec<f64>),
    TraceClass(usize),
    DirectSum(Vec<SpaceSpec>),
}

/// A validated description of a finite-dimensional normed space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceSpec(Repr);

/// Borrowed view of a [`SpaceSpec`] for matching.
#[derive(Clone, Copy, Debug)]
pub enum SpaceKind<'a> {
    WeightedL1 { weights: &'a [f64] },
    TraceClass { dim: usize },
    DirectSum { summands: &'a [SpaceSpec] },
}

impl SpaceSpec {
    pub fn weighted_l1(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::input("weighted l1 space needs at least one coordinate"));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::input(format!("weight {i} is {w}; weights must be finite and > 0")));
        }
        Ok(SpaceSpec(Repr::WeightedL1(weights)))
    }

    /// ℓ¹ with counting measure on `n` points.
    pub fn l1(n: usize) -> Result<Self> {
        Self::weighted_l1(vec![1.0; n])
    }

    pub fn trace_class(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("trace class dimension must be positive"));
        }
        Ok(SpaceSpec(Repr::TraceClass(d)))
    }

    /// ⊕₁ sum of `summands`. Nested sums are flattened; at least two summands
    /// must remain.
    pub fn direct_sum(summands: Vec<SpaceSpec>) -> Result<Self> {
        let mut flat = Vec::with_capacity(summands.len());
        for s in summands {
            match s.0 {
                Repr::DirectSum(inner) => flat.extend(inner),
                other => flat.push(SpaceSpec(other)),
            }
        }
        if flat.len() < 2 {
            return Err(Error::input("a direct sum needs at least two summands"));
        }
        Ok(SpaceSpec(Repr::DirectSum(flat)))
    }

    pub fn kind(&self) -> SpaceKind<'_> {
        match &self.0 {
            Repr::WeightedL1(w) => SpaceKind::WeightedL1 { weights: w },
            Repr::TraceClass(d) => SpaceKind::TraceClass { dim: *d },
            Repr::DirectSum(s) => SpaceKind::DirectSum { summands: s },
        }
    }

    /// Real dimension of the ambient coordinate vector.
    pub fn dim(&self) -> usize {
        match &self.0 {
            Repr::WeightedL1(w) => w.len(),
            Repr::TraceClass(d) => 2 * d * d,
            Repr::DirectSum(s) => s.iter().map(SpaceSpec::dim).sum(),
        }
    }

    /// The summands of a direct sum, or the space itself.
    pub fn summands(&self) -> &[SpaceSpec] {
        match &self.0 {
            Repr::DirectSum(s) => s,
            _ => std::slice::from_ref(self),
        }
    }

    /// Coordinate ranges of each summand block.
    pub fn blocks(&self) -> Vec<(&SpaceSpec, Range<usize>)> {
        let mut start = 0;
        self.summands()
            .iter()
            .map(|s| {
                let r = start..start + s.dim();
                start = r.end;
                (s, r)
            })
            .collect()
    }

    /// If every block is weighted ℓ¹, the norm is a single weighted ℓ¹ norm
    /// over the concatenated coordinates; returns those weights.
    pub fn polyhedral_weights(&self) -> Option<Vec<f64>> {
        let mut out = Vec::with_capacity(self.dim());
        for s in self.summands() {
            match &s.0 {
                Repr::WeightedL1(w) => out.extend_from_slice(w),
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn zero(&self) -> Point {
        Point(vec![0.0; self.dim()])
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.len() != self.dim() {
            return Err(Error::input(format!(
                "point has {} coordinates, space has real dimension {}",
                p.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn norm(&self, p: &Point) -> Result<f64> {
        self.check_point(p)?;
        Ok(self.norm_of(p))
    }

    /// Norm of a raw coordinate slice. The caller guarantees the length.
    pub fn norm_of(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match &self.0 {
            Repr::WeightedL1(w) => w.iter().zip(x).map(|(w, x)| w * x.abs()).sum(),
            Repr::TraceClass(d) => CMatrix::from_real_coords(*d, x).trace_norm(),
            Repr::DirectSum(_) => self.blocks().into_iter().map(|(s, r)| s.norm_of(&x[r])).sum(),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let diff: Vec<f64> = a.iter().zip(b).map(|(a, b)| a - b).collect();
        self.norm_of(&diff)
    }

    /// Minimal-Euclidean-norm element of the subdifferential of the norm at `x`.
    ///
    /// ℓ¹ blocks give the weighted sign vector (0 on zero coordinates); trace
    /// blocks give the partial isometry `U V*` over the nonzero singular values.
    pub fn norm_subgradient(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(x.len());
        self.write_subgradient(x, &mut out);
        out
    }

    fn write_subgradient(&self, x: &[f64], out: &mut Vec<f64>) {
        match &self.0 {
            Repr::WeightedL1(w) => out.extend(w.iter().zip(x).map(|(w, &x)| {
                if x > 0.0 {
                    *w
                } else if x < 0.0 {
                    -*w
                } else {
                    0.0
                }
            })),
            Repr::TraceClass(d) => {
                linalg::svd(&CMatrix::from_real_coords(*d, x)).polar_factor().write_real_coords(out)
            }
            Repr::DirectSum(_) => {
                for (s, r) in self.blocks() {
                    s.write_subgradient(&x[r], out);
                }
            }
        }
    }

    /// Places `p` (a point of summand `index`) into this direct sum, zero elsewhere.
    pub fn embed_direct_sum(&self, index: usize, p: &Point) -> Result<Point> {
        let blocks = self.direct_sum_blocks()?;
        let (summand, range) = blocks.get(index).cloned().ok_or_else(|| {
            Error::input(format!("summand index {index} out of range (have {})", blocks.len()))
        })?;
        summand.check_point(p)?;
        let mut out = vec![0.0; self.dim()];
        out[range].copy_from_slice(p);
        Ok(Point(out))
    }

    /// Splits a point of this direct sum into its summand blocks.
    pub fn split_direct_sum(&self, q: &Point) -> Result<Vec<Point>> {
        let blocks = self.direct_sum_blocks()?;
        self.check_point(q)?;
        Ok(blocks.into_iter().map(|(_, r)| Point(q[r].to_vec())).collect())
    }

    fn direct_sum_blocks(&self) -> Result<Vec<(&SpaceSpec, Range<usize>)>> {
        match &self.0 {
            Repr::DirectSum(_) => Ok(self.blocks()),
            _ => Err(Error::input("operation requires a direct sum space")),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::WeightedL1(w) => write!(f, "l1[{}]", w.len()),
            Repr::TraceClass(d) => write!(f, "S1[{d}x{d}]"),
            Repr::DirectSum(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" (+)1 "))
            }
        }
    }
}

/// A point of some [`SpaceSpec`], as its flat real coordinates.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Point(Vec<f64>);

impl Point {
    /// Rejects non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::input(format!("coordinate {i} is not finite")));
        }
        Ok(Point(coords))
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        Point(m.to_real_coords())
    }

    pub fn to_matrix(&self, d: usize) -> CMatrix {
        CMatrix::from_real_coords(d, &self.0)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn add(&self, other: &[f64]) -> Point {
        Point(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &[f64]) -> Point {
        Point(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// Largest coordinate difference.
    pub fn max_diff(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// A non-empty finite subset of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    space: SpaceSpec,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(space: SpaceSpec, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("point set must be non-empty"));
        }
        for (i, p) in points.iter().enumerate() {
            space.check_point(p).map_err(|e| Error::input(format!("point {i}: {e}")))?;
        }
        Ok(PointSet { space, points })
    }

    /// Convenience constructor from raw coordinate vectors.
    pub fn from_coords(space: SpaceSpec, coords: Vec<Vec<f64>>) -> Result<Self> {
        let points = coords.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?;
        Self::new(space, points)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `max_a ‖x − a‖`.
    pub fn max_distance(&self, x: &[f64]) -> f64 {
        self.points.iter().map(|a| self.space.distance(x, a)).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.max(self.space.distance(a, b));
            }
        }
        best
    }

    pub fn barycenter(&self) -> Point {
        let mut acc = vec![0.0; self.space.dim()];
        for p in &self.points {
            for (s, x) in acc.iter_mut().zip(p.iter()) {
                *s += x;
            }
        }
        let inv = 1.0 / self.points.len() as f64;
        Point(acc.into_iter().map(|s| s * inv).collect())
    }

    /// Largest norm of a member.
    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(|p| self.space.norm_of(p)).fold(0.0, f64::max)
    }

    /// Removes points within `tol` (max-coordinate) of an earlier point.
    pub fn dedup(&self, tol: f64) -> PointSet {
        let mut kept: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if !kept.iter().any(|k| k.max_diff(p) <= tol) {
                kept.push(p.clone());
            }
        }
        PointSet { space: self.space.clone(), points: kept }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn norm_examples() {
        let l1 = SpaceSpec::l1(2).unwrap();
        assert_eq!(l1.norm(&Point::new(vec![1.0, -1.0]).unwrap()).unwrap(), 2.0);

        let s1 = SpaceSpec::trace_class(2).unwrap();
        let m = CMatrix::from_real_diag(&[3.0, -4.0]);
        assert!((s1.norm(&Point::from_matrix(&m)).unwrap() - 7.0).abs() < 1e-14);

        let w = SpaceSpec::direct_sum(vec![SpaceSpec::l1(2).unwrap(), SpaceSpec::l1(1).unwrap()]).unwrap();
        assert_eq!(w.norm(&Point::new(vec![1.0, 1.0, 2.0]).unwrap()).unwrap(), 4.0);
    }

    #[test]
    fn weighted_norm_and_zero() {
        let s = SpaceSpec::weighted_l1(vec![0.5, 2.0]).unwrap();
        assert_eq!(s.norm_of(&[2.0, -1.0]), 3.0);
        assert_eq!(s.norm_of(&s.zero()), 0.0);
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(SpaceSpec::weighted_l1(vec![]).is_err());
        assert!(SpaceSpec::weighted_l1(vec![1.0, 0.0]).is_err());
        assert!(SpaceSpec::weighted_l1(vec![1.0, f64::NAN]).is_err());
        assert!(SpaceSpec::weighted_l1(vec![-1.0]).is_err());
        assert!(SpaceSpec::trace_class(0).is_err());
        assert!(SpaceSpec::direct_sum(vec![SpaceSpec::l1(1).unwrap()]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_input_error() {
        let s = SpaceSpec::l1(3).unwrap();
        let err = s.norm(&Point::new(vec![1.0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(Point::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn direct_sums_flatten() {
        let inner = SpaceSpec::direct_sum(vec![SpaceSpec::l1(1).unwrap(), SpaceSpec::l1(2).unwrap()]).unwrap();
        let outer = SpaceSpec::direct_sum(vec![inner, SpaceSpec::trace_class(2).unwrap()]).unwrap();
        assert_eq!(outer.summands().len(), 3);
        assert_eq!(outer.dim(), 1 + 2 + 8);
        assert!(outer.polyhedral_weights().is_none());
    }

    #[test]
    fn embed_and_split() {
        let w = SpaceSpec::direct_sum(vec![SpaceSpec::l1(2).unwrap(), SpaceSpec::l1(1).unwrap()]).unwrap();
        let p = Point::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(w.embed_direct_sum(0, &p).unwrap().coords(), &[1.0, 2.0, 0.0]);
        assert_eq!(w.embed_direct_sum(1, &Point::new(vec![0.0]).unwrap()).unwrap().coords(), &[0.0; 3]);
        assert!(matches!(w.embed_direct_sum(2, &p), Err(Error::Input(_))));
        assert!(matches!(w.embed_direct_sum(1, &p), Err(Error::Input(_))));

        let blocks = w.split_direct_sum(&Point::new(vec![1.0, 2.0, 3.0]).unwrap()).unwrap();
        assert_eq!(blocks[0].coords(), &[1.0, 2.0]);
        assert_eq!(blocks[1].coords(), &[3.0]);
        let zero = w.split_direct_sum(&w.zero()).unwrap();
        assert!(zero.iter().all(|b| b.iter().all(|&x| x == 0.0)));
        assert!(SpaceSpec::l1(3).unwrap().split_direct_sum(&Point::new(vec![0.0; 3]).unwrap()).is_err());
    }

    #[test]
    fn trace_subgradient_pairs_with_point() {
        let s = SpaceSpec::trace_class(2).unwrap();
        let m = CMatrix::from_rows(&[
            &[Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0)],
            &[Complex64::new(-1.0, 0.0), Complex64::new(0.5, 0.0)],
        ]);
        let x = Point::from_matrix(&m);
        let g = s.norm_subgradient(&x);
        let pairing: f64 = g.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        assert!((pairing - s.norm_of(&x)).abs() < 1e-12);
    }

    #[test]
    fn point_set_helpers() {
        let s = SpaceSpec::l1(2).unwrap();
        let a = PointSet::from_coords(s, vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(a.diameter(), 2.0);
        assert_eq!(a.dedup(1e-9).len(), 2);
        assert_eq!(a.max_norm(), 2.0);
        assert!(PointSet::new(SpaceSpec::l1(1).unwrap(), vec![]).is_err());
    }
}
