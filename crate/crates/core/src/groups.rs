//! Isometries of the supported spaces, finite groups generated by them, and
//! cocycles over those groups.
//!
//! Linear isometries are restricted to the two families whose isometry
//! property can be verified exactly: weight-compatible signed permutations of
//! weighted ℓ¹ and unitary conjugations `x ↦ u x u*` of trace-class matrices.
//! An affine isometry is a linear part plus a translation; for an affine
//! group action the translations `b(g)` form a cocycle
//! `b(gh) = b(g) + π(g) b(h)`.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::spaces::{Point, SpaceKind, SpaceSpec};

/// Elements closer than this (max-coordinate) are the same element.
pub const GROUP_EQ_TOL: f64 = 1e-9;
/// Distances in `(GROUP_EQ_TOL, AMBIGUITY_TOL]` make closure detection unreliable.
pub const AMBIGUITY_TOL: f64 = 1e-6;
pub const DEFAULT_GROUP_CAP: usize = 10_000;
/// Sampled norm-preservation check applied to every user-supplied isometry.
const NORM_CHECK_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum LinearIsometry {
    /// `x ↦ y` with `y[perm[i]] = signs[i] · x[i]`.
    SignedPermutation { perm: Vec<usize>, signs: Vec<i8> },
    /// `x ↦ u x u*` on complex `d×d` matrices.
    UnitaryConjugation { u: CMatrix },
    /// One isometry per direct-sum summand.
    BlockDiagonal(Vec<LinearIsometry>),
}

impl LinearIsometry {
    pub fn signed_permutation(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if n == 0 || signs.len() != n {
            return Err(Error::input(format!("permutation of length {n} needs {n} signs, got {}", signs.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::input(format!("{perm:?} is not a permutation of 0..{n}")));
            }
            seen[p] = true;
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::input(format!("sign {s} is not ±1")));
        }
        Ok(LinearIsometry::SignedPermutation { perm, signs })
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::signed_permutation(perm, vec![1; n])
    }

    pub fn unitary_conjugation(u: CMatrix) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::input("unitary has non-finite entries"));
        }
        let defect = u.unitarity_defect();
        if defect > 1e-10 {
            return Err(Error::input(format!("matrix is not unitary: max |uu* - I| = {defect:.3e}")));
        }
        Ok(LinearIsometry::UnitaryConjugation { u })
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        match space.kind() {
            SpaceKind::WeightedL1 { weights } => {
                LinearIsometry::SignedPermutation { perm: (0..weights.len()).collect(), signs: vec![1; weights.len()] }
            }
            SpaceKind::TraceClass { dim } => LinearIsometry::UnitaryConjugation { u: CMatrix::identity(dim) },
            SpaceKind::DirectSum { summands } => {
                LinearIsometry::BlockDiagonal(summands.iter().map(LinearIsometry::identity).collect())
            }
        }
    }

    /// Real dimension of the space this map acts on.
    pub fn real_dim(&self) -> usize {
        match self {
            LinearIsometry::SignedPermutation { perm, .. } => perm.len(),
            LinearIsometry::UnitaryConjugation { u } => 2 * u.dim() * u.dim(),
            LinearIsometry::BlockDiagonal(blocks) => blocks.iter().map(LinearIsometry::real_dim).sum(),
        }
    }

    /// Structural match with `space`, weight compatibility, and a sampled
    /// norm-preservation check.
    pub fn check_isometry(&self, space: &SpaceSpec) -> Result<()> {
        self.check_structure(space)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_1503);
        for _ in 0..NORM_CHECK_SAMPLES {
            let x: Vec<f64> = (0..space.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let before = space.norm_of(&x);
            let after = space.norm_of(&self.apply(&x));
            if (before - after).abs() > 1e-9 * before.max(1.0) {
                return Err(Error::input(format!("map changes a norm from {before} to {after}")));
            }
        }
        Ok(())
    }

    fn check_structure(&self, space: &SpaceSpec) -> Result<()> {
        match (self, space.kind()) {
            (LinearIsometry::SignedPermutation { perm, .. }, SpaceKind::WeightedL1 { weights }) => {
                if perm.len() != weights.len() {
                    return Err(Error::input(format!(
                        "permutation on {} coordinates for a space with {}",
                        perm.len(),
                        weights.len()
                    )));
                }
                for (i, &p) in perm.iter().enumerate() {
                    if weights[p] != weights[i] {
                        return Err(Error::input(format!(
                            "permutation sends coordinate {i} (weight {}) to {p} (weight {}); not an isometry",
                            weights[i], weights[p]
                        )));
                    }
                }
                Ok(())
            }
            (LinearIsometry::UnitaryConjugation { u }, SpaceKind::TraceClass { dim }) => {
                if u.dim() != dim {
                    return Err(Error::input(format!("{}x{} unitary on {dim}x{dim} matrices", u.dim(), u.dim())));
                }
                Ok(())
            }
            (LinearIsometry::BlockDiagonal(blocks), SpaceKind::DirectSum { summands }) => {
                if blocks.len() != summands.len() {
                    return Err(Error::input(format!(
                        "{} blocks for {} summands",
                        blocks.len(),
                        summands.len()
                    )));
                }
                blocks.iter().zip(summands).try_for_each(|(b, s)| b.check_structure(s))
            }
            _ => Err(Error::input(format!("isometry kind does not match space {space}"))),
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(x.len());
        self.apply_into(x, &mut out);
        out
    }

    fn apply_into(&self, x: &[f64], out: &mut Vec<f64>) {
        match self {
            LinearIsometry::SignedPermutation { perm, signs } => {
                let start = out.len();
                out.resize(start + perm.len(), 0.0);
                for i in 0..perm.len() {
                    out[start + perm[i]] = f64::from(signs[i]) * x[i];
                }
            }
            LinearIsometry::UnitaryConjugation { u } => {
                let m = CMatrix::from_real_coords(u.dim(), x);
                (&(u * &m) * &u.adjoint()).write_real_coords(out);
            }
            LinearIsometry::BlockDiagonal(blocks) => {
                let mut start = 0;
                for b in blocks {
                    let len = b.real_dim();
                    b.apply_into(&x[start..start + len], out);
                    start += len;
                }
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearIsometry) -> Result<LinearIsometry> {
        match (self, other) {
            (
                LinearIsometry::SignedPermutation { perm: gp, signs: gs },
                LinearIsometry::SignedPermutation { perm: hp, signs: hs },
            ) if gp.len() == hp.len() => Ok(LinearIsometry::SignedPermutation {
                perm: hp.iter().map(|&j| gp[j]).collect(),
                signs: hp.iter().zip(hs).map(|(&j, &s)| gs[j] * s).collect(),
            }),
            (LinearIsometry::UnitaryConjugation { u: a }, LinearIsometry::UnitaryConjugation { u: b })
                if a.dim() == b.dim() =>
            {
                Ok(LinearIsometry::UnitaryConjugation { u: a * b })
            }
            (LinearIsometry::BlockDiagonal(a), LinearIsometry::BlockDiagonal(b)) if a.len() == b.len() => {
                Ok(LinearIsometry::BlockDiagonal(a.iter().zip(b).map(|(x, y)| x.compose(y)).collect::<Result<_>>()?))
            }
            _ => Err(Error::input("cannot compose isometries of different spaces")),
        }
    }

    pub fn inverse(&self) -> LinearIsometry {
        match self {
            LinearIsometry::SignedPermutation { perm, signs } => {
                let mut ip = vec![0; perm.len()];
                let mut is = vec![1; perm.len()];
                for i in 0..perm.len() {
                    ip[perm[i]] = i;
                    is[perm[i]] = signs[i];
                }
                LinearIsometry::SignedPermutation { perm: ip, signs: is }
            }
            LinearIsometry::UnitaryConjugation { u } => LinearIsometry::UnitaryConjugation { u: u.adjoint() },
            LinearIsometry::BlockDiagonal(b) => LinearIsometry::BlockDiagonal(b.iter().map(Self::inverse).collect()),
        }
    }

    /// Max-coordinate distance between the two maps' representations.
    ///
    /// Conjugation by `u` and by `e^{iθ}u` is the same map, so unitaries are
    /// compared after aligning the phase.
    pub fn distance(&self, other: &LinearIsometry) -> f64 {
        match (self, other) {
            (
                LinearIsometry::SignedPermutation { perm: a, signs: sa },
                LinearIsometry::SignedPermutation { perm: b, signs: sb },
            ) => {
                if a == b && sa == sb {
                    0.0
                } else {
                    1.0
                }
            }
            (LinearIsometry::UnitaryConjugation { u: a }, LinearIsometry::UnitaryConjugation { u: b }) => {
                let overlap: Complex64 = a.entries().iter().zip(b.entries()).map(|(x, y)| y.conj() * x).sum();
                if overlap.norm() < 0.5 * a.dim() as f64 {
                    return 1.0;
                }
                let phase = overlap / overlap.norm();
                a.entries().iter().zip(b.entries()).map(|(x, y)| (x - phase * y).norm()).fold(0.0, f64::max)
            }
            (LinearIsometry::BlockDiagonal(a), LinearIsometry::BlockDiagonal(b)) if a.len() == b.len() => {
                a.iter().zip(b).map(|(x, y)| x.distance(y)).fold(0.0, f64::max)
            }
            _ => f64::INFINITY,
        }
    }

    /// The unitary of a conjugation, if this is one.
    pub fn unitary(&self) -> Option<&CMatrix> {
        match self {
            LinearIsometry::UnitaryConjugation { u } => Some(u),
            _ => None,
        }
    }
}

/// `x ↦ linear(x) + translation`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineIsometry {
    pub linear: LinearIsometry,
    pub translation: Point,
}

impl AffineIsometry {
    /// Validates `linear` as an isometry of `space` and the translation's dimension.
    pub fn new(space: &SpaceSpec, linear: LinearIsometry, translation: Point) -> Result<Self> {
        linear.check_isometry(space)?;
        space.check_point(&translation)?;
        Ok(AffineIsometry { linear, translation })
    }

    pub fn linear(space: &SpaceSpec, linear: LinearIsometry) -> Result<Self> {
        Self::new(space, linear, space.zero())
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        AffineIsometry { linear: LinearIsometry::identity(space), translation: space.zero() }
    }

    pub fn real_dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let mut out = self.linear.apply(p);
        for (o, t) in out.iter_mut().zip(self.translation.iter()) {
            *o += t;
        }
        out
    }

    /// `self ∘ other`: linear parts multiply, `t = L_self(t_other) + t_self`.
    pub fn compose(&self, other: &AffineIsometry) -> Result<AffineIsometry> {
        if self.real_dim() != other.real_dim() {
            return Err(Error::input("cannot compose isometries of different spaces"));
        }
        Ok(AffineIsometry {
            linear: self.linear.compose(&other.linear)?,
            translation: Point::new(self.apply(&other.translation))?,
        })
    }

    pub fn inverse(&self) -> AffineIsometry {
        let linear = self.linear.inverse();
        let translation = linear.apply(&self.translation).into_iter().map(|x| -x).collect();
        AffineIsometry { linear, translation: Point::new(translation).expect("finite") }
    }

    pub fn distance(&self, other: &AffineIsometry) -> f64 {
        self.translation.max_diff(&other.translation).max(self.linear.distance(&other.linear))
    }
}

/// Applies `g` to `p` after checking dimensions.
pub fn apply_affine(g: &AffineIsometry, p: &Point) -> Result<Point> {
    if p.len() != g.real_dim() {
        return Err(Error::input(format!("point has {} coordinates, isometry acts on {}", p.len(), g.real_dim())));
    }
    Point::new(g.apply(p))
}

pub fn compose(g: &AffineIsometry, h: &AffineIsometry) -> Result<AffineIsometry> {
    g.compose(h)
}

/// A finite group of affine isometries in BFS discovery order, identity first.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElements {
    space: SpaceSpec,
    elements: Vec<AffineIsometry>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl GroupElements {
    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineIsometry] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineIsometry {
        &self.elements[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// True when every translation is zero.
    pub fn is_linear(&self) -> bool {
        self.elements.iter().all(|g| g.translation.iter().all(|&x| x == 0.0))
    }

    /// Same linear parts and multiplication table, new translations.
    ///
    /// The caller guarantees the translations satisfy the cocycle identity,
    /// which is exactly what keeps the table valid.
    pub(crate) fn with_translations(&self, translations: &[Point]) -> GroupElements {
        let elements = self
            .elements
            .iter()
            .zip(translations)
            .map(|(g, t)| AffineIsometry { linear: g.linear.clone(), translation: t.clone() })
            .collect();
        GroupElements {
            space: self.space.clone(),
            elements,
            table: self.table.clone(),
            inverses: self.inverses.clone(),
        }
    }

    fn find(&self, candidate: &AffineIsometry) -> Result<Option<usize>> {
        find_in(&self.elements, candidate)
    }
}

fn find_in(elements: &[AffineIsometry], candidate: &AffineIsometry) -> Result<Option<usize>> {
    for (i, e) in elements.iter().enumerate() {
        let d = e.distance(candidate);
        if d <= GROUP_EQ_TOL {
            return Ok(Some(i));
        }
        if d <= AMBIGUITY_TOL {
            return Err(Error::precondition(format!(
                "closure is numerically ambiguous: a product lies {d:.3e} from element {i} \
                 (neither equal within {GROUP_EQ_TOL:e} nor separated beyond {AMBIGUITY_TOL:e})"
            )));
        }
    }
    Ok(None)
}

impl fmt::Display for GroupElements {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} on {}", self.order(), self.space)
    }
}

/// Breadth-first closure of `generators` under composition.
///
/// Each generator is checked to be an isometry of `space`. Elements are
/// discovered as `s ∘ e` for generators `s` and known elements `e`, which for
/// a finite group also yields all inverses.
pub fn generate_closure(space: &SpaceSpec, generators: &[AffineIsometry], cap: usize) -> Result<GroupElements> {
    if generators.is_empty() {
        return Err(Error::input("at least one generator is required"));
    }
    if cap == 0 {
        return Err(Error::input("group cap must be at least 1"));
    }
    for (i, g) in generators.iter().enumerate() {
        g.linear.check_isometry(space).map_err(|e| Error::input(format!("generator {i}: {e}")))?;
        space.check_point(&g.translation).map_err(|e| Error::input(format!("generator {i}: {e}")))?;
    }
    let mut elements = vec![AffineIsometry::identity(space)];
    let mut next = 0;
    while next < elements.len() {
        let current = elements[next].clone();
        for s in generators {
            let candidate = s.compose(&current)?;
            if find_in(&elements, &candidate)?.is_none() {
                if elements.len() == cap {
                    return Err(Error::resource(format!("group closure exceeds the cap of {cap} elements")));
                }
                elements.push(candidate);
            }
        }
        next += 1;
    }
    let mut group =
        GroupElements { space: space.clone(), table: Vec::new(), inverses: Vec::new(), elements: Vec::new() };
    group.elements = elements;
    let n = group.order();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = group.elements[i].compose(&group.elements[j])?;
            table[i][j] = group.find(&prod)?.ok_or_else(|| {
                Error::precondition(format!("product of elements {i} and {j} left the computed closure"))
            })?;
        }
    }
    let inverses = (0..n)
        .map(|i| {
            table[i].iter().position(|&k| k == 0).ok_or_else(|| Error::precondition(format!("element {i} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    group.table = table;
    group.inverses = inverses;
    Ok(group)
}

/// A map `b: G → V` over the linear parts `π(g)` of a group.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    group: GroupElements,
    values: Vec<Point>,
}

impl Cocycle {
    pub fn new(group: GroupElements, values: Vec<Point>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::input(format!("{} cocycle values for a group of order {}", values.len(), group.order())));
        }
        for (i, v) in values.iter().enumerate() {
            group.space().check_point(v).map_err(|e| Error::input(format!("value {i}: {e}")))?;
        }
        Ok(Cocycle { group, values })
    }

    /// The cocycle of an affine group: `b(g)` is the translation of `g`.
    pub fn from_affine_group(group: &GroupElements) -> Self {
        let values = group.elements().iter().map(|g| g.translation.clone()).collect();
        let zero = vec![group.space().zero(); group.order()];
        Cocycle { group: group.with_translations(&zero), values }
    }

    pub fn group(&self) -> &GroupElements {
        &self.group
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    /// `sup_g ‖b(g)‖`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| self.group.space().norm_of(v)).fold(0.0, f64::max)
    }

    /// The affine action `g·x = π(g)x + b(g)`.
    pub fn affine_group(&self) -> GroupElements {
        self.group.with_translations(&self.values)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleCheck {
    pub ok: bool,
    /// Largest `‖b(gh) − b(g) − π(g)b(h)‖`, including `‖b(e)‖`.
    pub worst: f64,
    pub worst_pair: Option<(usize, usize)>,
}

pub fn verify_cocycle(c: &Cocycle, tol: f64) -> CocycleCheck {
    let space = c.group.space();
    let mut worst = space.norm_of(&c.values[0]);
    let mut worst_pair = if worst > 0.0 { Some((0, 0)) } else { None };
    for g in 0..c.group.order() {
        let lin = &c.group.element(g).linear;
        for h in 0..c.group.order() {
            let gh = c.group.mul(g, h);
            let moved = lin.apply(&c.values[h]);
            let resid: Vec<f64> = (0..space.dim()).map(|i| c.values[gh][i] - c.values[g][i] - moved[i]).collect();
            let r = space.norm_of(&resid);
            if r > worst {
                worst = r;
                worst_pair = Some((g, h));
            }
        }
    }
    CocycleCheck { ok: worst <= tol, worst, worst_pair }
}

/// `b(g) = v₀ − π(g) v₀`.
pub fn coboundary(group: &GroupElements, v0: &Point) -> Result<Cocycle> {
    group.space().check_point(v0)?;
    let values = group
        .elements()
        .iter()
        .map(|g| Point::new(v0.iter().zip(g.linear.apply(v0)).map(|(a, b)| a - b).collect()))
        .collect::<Result<Vec<_>>>()?;
    let zero = vec![group.space().zero(); group.order()];
    Ok(Cocycle { group: group.with_translations(&zero), values })
}

/// Standard unitary generators for small conjugation groups.
pub mod presets {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Pauli X, Y, Z.
    pub fn pauli() -> Vec<CMatrix> {
        vec![
            CMatrix::from_rows(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]]),
            CMatrix::from_rows(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]]),
            CMatrix::from_rows(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(-1., 0.)]]),
        ]
    }

    /// Shift `X e_k = e_{k+1}` and clock `Z = diag(ωᵏ)`, `ω = e^{2πi/d}`.
    pub fn clock_and_shift(d: usize) -> Vec<CMatrix> {
        let mut shift = CMatrix::zeros(d);
        for k in 0..d {
            shift[((k + 1) % d, k)] = c(1.0, 0.0);
        }
        let clock: Vec<Complex64> =
            (0..d).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64)).collect();
        vec![shift, CMatrix::from_diag(&clock)]
    }

    /// Conjugation group generated by `unitaries` on `d×d` trace-class matrices.
    pub fn conjugation_group(unitaries: &[CMatrix], cap: usize) -> Result<GroupElements> {
        let d = unitaries.first().map(CMatrix::dim).ok_or_else(|| Error::input("no unitaries"))?;
        let space = SpaceSpec::trace_class(d)?;
        let gens = unitaries
            .iter()
            .map(|u| AffineIsometry::linear(&space, LinearIsometry::unitary_conjugation(u.clone())?))
            .collect::<Result<Vec<_>>>()?;
        generate_closure(&space, &gens, cap)
    }
}
