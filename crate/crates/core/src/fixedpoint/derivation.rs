//! Derivations of matrix algebras into the trace-class bimodule.
//!
//! A derivation is recorded by its values `D(g) = D(u_g)` on the unitaries of
//! a finite conjugation group. `g ↦ D(u_g) u_g*` is a cocycle for the action
//! `x ↦ u_g x u_g*`; trivializing it yields `v` with `D(u) = v u − u v`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{trivialize_cocycle, FixedPointResult, NORM_BOUND_SLACK};
use crate::chebyshev::CentreOptions;
use crate::error::{Error, Result};
use crate::groups::{Cocycle, GroupElements};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::spaces::{Point, SpaceKind};

/// Leibniz rule tolerance, relative to `max_g ‖D(g)‖` (floored at 1).
pub const LEIBNIZ_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    d: usize,
    group: GroupElements,
    values: Vec<CMatrix>,
}

impl Derivation {
    /// `values[i]` is `D(u_i)` for the unitary stored in group element `i`.
    pub fn new(group: GroupElements, values: Vec<CMatrix>) -> Result<Self> {
        let d = match group.space().kind() {
            SpaceKind::TraceClass { dim } => dim,
            _ => return Err(Error::input("derivations need a trace-class group")),
        };
        if !group.is_linear() || group.elements().iter().any(|g| g.linear.unitary().is_none()) {
            return Err(Error::input("derivation group must consist of unitary conjugations"));
        }
        if values.len() != group.order() {
            return Err(Error::input(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        if let Some(i) = values.iter().position(|m| m.dim() != d || !m.is_finite()) {
            return Err(Error::input(format!("value {i} is not a finite {d}x{d} matrix")));
        }
        Ok(Derivation { d, group, values })
    }

    /// The inner derivation `ad_w : u ↦ w u − u w`.
    pub fn inner(group: GroupElements, w: &CMatrix) -> Result<Self> {
        let values = group
            .elements()
            .iter()
            .map(|g| {
                let u = g.linear.unitary().ok_or_else(|| Error::input("not a unitary conjugation"))?;
                Ok(&(w * u) - &(u * w))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, values)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn group(&self) -> &GroupElements {
        &self.group
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    pub fn unitary(&self, i: usize) -> &CMatrix {
        self.group.element(i).linear.unitary().expect("checked in new")
    }

    /// `max_g ‖D(g)‖_tr`, a lower bound for the operator norm of `D`.
    pub fn norm_lower_bound(&self) -> f64 {
        self.values.iter().map(CMatrix::trace_norm).fold(0.0, f64::max)
    }

    /// Worst `‖D(u_gh) − z(D(u_g)u_h + u_g D(u_h))‖_tr`, where `z` is the
    /// phase with `u_gh = z u_g u_h` (the group only remembers conjugations).
    pub fn leibniz_defect(&self) -> (f64, Option<(usize, usize)>) {
        let mut worst = (0.0, None);
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.mul(g, h);
                let prod = self.unitary(g) * self.unitary(h);
                let overlap: Complex64 =
                    prod.entries().iter().zip(self.unitary(gh).entries()).map(|(p, q)| p.conj() * q).sum();
                let z = overlap / overlap.norm();
                let rhs = (&(&self.values[g] * self.unitary(h)) + &(self.unitary(g) * &self.values[h])).scale(z);
                let r = (&self.values[gh] - &rhs).trace_norm();
                if r > worst.0 {
                    worst = (r, Some((g, h)));
                }
            }
        }
        worst
    }

    /// Extends `D` linearly to `a ∈ span{u_g}`. Fails if `a` is outside the span.
    pub fn apply(&self, a: &CMatrix) -> Result<CMatrix> {
        let coeffs = self.span_coefficients(a)?;
        let mut out = CMatrix::zeros(self.d);
        for (lambda, dv) in coeffs.iter().zip(&self.values) {
            out = &out + &dv.scale(*lambda);
        }
        Ok(out)
    }

    /// Complex `λ` with `Σ λ_g u_g = a`, by real least squares.
    pub fn span_coefficients(&self, a: &CMatrix) -> Result<Vec<Complex64>> {
        let n = self.group.order();
        let rows = 2 * self.d * self.d;
        let mut m = DMatrix::<f64>::zeros(rows, 2 * n);
        let i = Complex64::new(0.0, 1.0);
        for g in 0..n {
            let re = self.unitary(g).to_real_coords();
            let im = self.unitary(g).scale(i).to_real_coords();
            for r in 0..rows {
                m[(r, 2 * g)] = re[r];
                m[(r, 2 * g + 1)] = im[r];
            }
        }
        let target = DVector::from_vec(a.to_real_coords());
        let sol = m.clone().svd(true, true).solve(&target, 1e-12).map_err(|e| Error::input(e.to_string()))?;
        let resid = (&m * &sol - &target).amax();
        if resid > 1e-9 * a.max_abs().max(1.0) {
            return Err(Error::input(format!("matrix is not in the span of the group unitaries (residual {resid:.3e})")));
        }
        Ok((0..n).map(|g| Complex64::new(sol[2 * g], sol[2 * g + 1])).collect())
    }
}

/// `c(g) = D(u_g) u_g*` over the conjugation action.
pub fn derivation_to_cocycle(der: &Derivation) -> Result<Cocycle> {
    let (worst, pair) = der.leibniz_defect();
    let tol = LEIBNIZ_TOL * der.norm_lower_bound().max(1.0);
    if worst > tol {
        let (g, h) = pair.unwrap_or((0, 0));
        return Err(Error::precondition(format!("Leibniz rule fails by {worst:.3e} at (g{g}, h{h})")));
    }
    let values = (0..der.group.order())
        .map(|g| Point::from_matrix(&(&der.values[g] * &der.unitary(g).adjoint())))
        .collect();
    Cocycle::new(der.group.clone(), values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSolution {
    /// `v` with `D(u) = v u − u v` on the group.
    pub v: CMatrix,
    pub fixed: FixedPointResult,
    /// `max_g ‖D(g)‖_tr`.
    pub derivation_norm: f64,
    /// `max_g ‖D(g) − (v u_g − u_g v)‖_tr`.
    pub inner_residual: f64,
    /// `‖v‖_tr ≤ max_g ‖D(g)‖_tr + slack`.
    pub norm_bound_ok: bool,
}

pub fn solve_derivation(der: &Derivation, opts: &CentreOptions) -> Result<DerivationSolution> {
    let cocycle = derivation_to_cocycle(der)?;
    let fixed = trivialize_cocycle(&cocycle, opts)?;
    let v = fixed.point.to_matrix(der.d);
    let inner_residual = (0..der.group.order())
        .map(|g| {
            let u = der.unitary(g);
            (&der.values[g] - &(&(&v * u) - &(u * &v))).trace_norm()
        })
        .fold(0.0, f64::max);
    let derivation_norm = der.norm_lower_bound();
    let norm_bound_ok = v.trace_norm() <= derivation_norm + NORM_BOUND_SLACK;
    Ok(DerivationSolution { v, fixed, derivation_norm, inner_residual, norm_bound_ok })
}

/// Writes `a` as a combination of four unitaries.
///
/// With `s = max(1, ‖a‖_op)`, `a/s = h₁ + i h₂` for Hermitian contractions
/// `h₁, h₂`, and each contraction is `h = (u + u*)/2` with
/// `u = h + i√(I − h²)`.
pub fn unitary_decomposition(a: &CMatrix) -> Result<Vec<(Complex64, CMatrix)>> {
    if !a.is_finite() {
        return Err(Error::input("matrix has non-finite entries"));
    }
    let s = a.operator_norm().max(1.0);
    let b = a.scale_real(1.0 / s);
    let lift = |h: &CMatrix| {
        hermitian_eigen(h).map_spectrum(|x| {
            let x = x.clamp(-1.0, 1.0);
            Complex64::new(x, (1.0 - x * x).max(0.0).sqrt())
        })
    };
    let u1 = lift(&b.hermitian_part());
    let u2 = lift(&b.skew_part());
    let half = Complex64::new(0.5 * s, 0.0);
    let ihalf = Complex64::new(0.0, 0.5 * s);
    Ok(vec![(half, u1.adjoint()), (half, u1), (ihalf, u2.adjoint()), (ihalf, u2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presets;

    fn recombine(parts: &[(Complex64, CMatrix)], d: usize) -> CMatrix {
        parts.iter().fold(CMatrix::zeros(d), |acc, (c, u)| &acc + &u.scale(*c))
    }

    #[test]
    fn zero_derivation() {
        let g = presets::conjugation_group(&presets::pauli(), 100).unwrap();
        let d = Derivation::inner(g, &CMatrix::zeros(2)).unwrap();
        let c = derivation_to_cocycle(&d).unwrap();
        assert!(c.values().iter().all(|v| v.iter().all(|&x| x == 0.0)));
        let sol = solve_derivation(&d, &CentreOptions::default()).unwrap();
        assert!(sol.v.max_abs() < 1e-15);
    }

    #[test]
    fn inner_derivation_gives_coboundary() {
        let g = presets::conjugation_group(&presets::pauli(), 100).unwrap();
        let w = CMatrix::from_real_diag(&[1.0, -1.0]);
        let d = Derivation::inner(g, &w).unwrap();
        let c = derivation_to_cocycle(&d).unwrap();
        for (i, ci) in c.values().iter().enumerate() {
            let u = d.unitary(i);
            let expect = &w - &(&(u * &w) * &u.adjoint());
            assert!((&ci.to_matrix(2) - &expect).max_abs() < 1e-14);
        }
    }

    #[test]
    fn leibniz_violation_is_precondition() {
        let g = presets::conjugation_group(&presets::pauli(), 100).unwrap();
        let mut values = vec![CMatrix::zeros(2); g.order()];
        values[1] = CMatrix::identity(2);
        let d = Derivation::new(g, values).unwrap();
        assert!(matches!(derivation_to_cocycle(&d), Err(Error::Precondition(_))));
    }

    #[test]
    fn decomposition_of_identity_and_hermitian() {
        let parts = unitary_decomposition(&CMatrix::identity(2)).unwrap();
        assert!((&recombine(&parts, 2) - &CMatrix::identity(2)).max_abs() < 1e-14);
        assert!(parts.iter().any(|(_, u)| (u - &CMatrix::identity(2)).max_abs() < 1e-14));

        let a = CMatrix::from_real_diag(&[0.5, -0.5]);
        let parts = unitary_decomposition(&a).unwrap();
        let r3 = 3f64.sqrt() / 2.0;
        let expect = CMatrix::from_diag(&[Complex64::new(0.5, r3), Complex64::new(-0.5, r3)]);
        assert!(parts.iter().any(|(_, u)| (u - &expect).max_abs() < 1e-12));
        assert!((&recombine(&parts, 2) - &a).max_abs() < 1e-12);
        for (_, u) in &parts {
            assert!(u.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn span_extension() {
        let g = presets::conjugation_group(&presets::clock_and_shift(3), 100).unwrap();
        let w = CMatrix::from_real_diag(&[1.0, 2.0, -0.5]);
        let d = Derivation::inner(g, &w).unwrap();
        let a = CMatrix::from_real_diag(&[0.3, -1.0, 2.0]);
        let da = d.apply(&a).unwrap();
        let expect = &(&w * &a) - &(&a * &w);
        assert!((&da - &expect).max_abs() < 1e-12);
    }
}
