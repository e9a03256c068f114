//! Dense two-phase simplex and the minimax reduction for polyhedral norms.
//!
//! The Chebyshev problem `min_v max_a Σᵢ wᵢ|vᵢ − aᵢ|` becomes a linear program
//! by introducing one envelope variable per (point, coordinate) and a radius
//! variable. The simplex uses Bland's rule throughout, so a given program
//! always follows the same pivot sequence.

use std::fmt;

use crate::error::{Error, Result};
use crate::spaces::{PointSet, SpaceSpec};

/// Smallest magnitude accepted as a pivot element.
pub const PIVOT_TOL: f64 = 1e-9;
/// Primal feasibility tolerance (phase-one objective, scaled by the largest rhs).
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Reduced costs above `-OPTIMALITY_TOL` count as non-negative.
pub const OPTIMALITY_TOL: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Free,
    NonNegative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, x)| a * x).sum()
    }

    /// Amount by which `x` violates this row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// `minimize objective·x` subject to the rows, with per-variable sign constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    vars: Vec<VarKind>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, vars: Vec<VarKind>) -> Result<Self> {
        if objective.len() != vars.len() {
            return Err(Error::input(format!(
                "objective has {} coefficients for {} variables",
                objective.len(),
                vars.len()
            )));
        }
        if objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::input("objective coefficients must be finite"));
        }
        Ok(LinearProgram { objective, vars, constraints: Vec::new() })
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        if coeffs.len() != self.vars.len() {
            return Err(Error::input(format!(
                "constraint has {} coefficients for {} variables",
                coeffs.len(),
                self.vars.len()
            )));
        }
        if !rhs.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::input("constraint entries must be finite"));
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn vars(&self) -> &[VarKind] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    /// Largest violation over rows and sign constraints.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| c.violation(x)).fold(0.0, f64::max);
        let signs = self
            .vars
            .iter()
            .zip(x)
            .filter(|(k, _)| **k == VarKind::NonNegative)
            .map(|(_, &x)| (-x).max(0.0))
            .fold(0.0, f64::max);
        rows.max(signs)
    }
}

/// Debug dump: objective first, then one constraint per line.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn terms(coeffs: &[f64]) -> String {
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(|(j, c)| format!("{c:+} x{j}"))
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" ")
            }
        }
        writeln!(f, "min: {}", terms(&self.objective))?;
        for (i, c) in self.constraints.iter().enumerate() {
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(f, "c{i}: {} {rel} {}", terms(&c.coeffs), c.rhs)?;
        }
        let free: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == VarKind::Free)
            .map(|(j, _)| format!("x{j}"))
            .collect();
        if !free.is_empty() {
            writeln!(f, "free: {}", free.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value; `+∞` when infeasible, `-∞` when unbounded.
    pub value: f64,
    /// Values of the original variables (empty when infeasible).
    pub primal: Vec<f64>,
    /// Basic columns of the internal standard form, one per row.
    pub basis: Vec<usize>,
    pub iterations: usize,
    /// Row multipliers read off the final basis (empty unless optimal).
    pub duals: Vec<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct LpOptions {
    pub max_iterations: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { max_iterations: MAX_ITERATIONS }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    solve_lp_with(lp, &LpOptions::default())
}

pub fn solve_lp_with(lp: &LinearProgram, opts: &LpOptions) -> Result<LpSolution> {
    let mut sf = StandardForm::new(lp);
    let mut iterations = 0usize;

    let phase_one: Vec<f64> = (0..sf.cols).map(|j| if sf.is_artificial(j) { 1.0 } else { 0.0 }).collect();
    let all = vec![true; sf.cols];
    let outcome = sf.tableau.run(&phase_one, &all, &mut iterations, opts.max_iterations)?;
    debug_assert_eq!(outcome, Outcome::Optimal, "phase one is bounded below");
    let rhs_scale = lp.constraints.iter().map(|c| c.rhs.abs()).fold(1.0, f64::max);
    if sf.tableau.objective_value(&phase_one) > FEASIBILITY_TOL * rhs_scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: f64::INFINITY,
            primal: Vec::new(),
            basis: sf.tableau.basis.clone(),
            iterations,
            duals: Vec::new(),
        });
    }
    sf.drive_out_artificials();

    let cost = sf.phase_two_cost(lp);
    let allowed: Vec<bool> = (0..sf.cols).map(|j| !sf.is_artificial(j)).collect();
    let outcome = sf.tableau.run(&cost, &allowed, &mut iterations, opts.max_iterations)?;
    let primal = sf.original_primal();
    match outcome {
        Outcome::Unbounded => Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: f64::NEG_INFINITY,
            primal,
            basis: sf.tableau.basis.clone(),
            iterations,
            duals: Vec::new(),
        }),
        Outcome::Optimal => {
            let duals = sf.duals(&cost);
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value: lp.evaluate(&primal),
                primal,
                basis: sf.tableau.basis.clone(),
                iterations,
                duals,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Dense tableau `B⁻¹[A | b]` with its basis.
struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major, `cols + 1` entries per row; the last is the rhs.
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn objective_value(&self, cost: &[f64]) -> f64 {
        (0..self.rows).map(|i| cost[self.basis[i]] * self.rhs(i)).sum()
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        cost[j] - (0..self.rows).map(|i| cost[self.basis[i]] * self.at(i, j)).sum::<f64>()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols + 1;
        let p = self.at(r, c);
        for j in 0..width {
            self.data[r * width + j] /= p;
        }
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let factor = self.data[i * width + c];
            if factor == 0.0 {
                continue;
            }
            for j in 0..width {
                let v = self.data[r * width + j];
                if v != 0.0 {
                    self.data[i * width + j] -= factor * v;
                }
            }
            self.data[i * width + c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Simplex iterations with Bland's rule: lowest-index improving column
    /// enters; among minimum-ratio rows the lowest basic index leaves.
    fn run(&mut self, cost: &[f64], allowed: &[bool], iterations: &mut usize, cap: usize) -> Result<Outcome> {
        let mut is_basic = vec![false; self.cols];
        for &b in &self.basis {
            is_basic[b] = true;
        }
        loop {
            let entering = (0..self.cols)
                .find(|&j| allowed[j] && !is_basic[j] && self.reduced_cost(cost, j) < -OPTIMALITY_TOL);
            let Some(c) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                        if (tie && self.basis[i] < self.basis[r]) || (!tie && ratio < best) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            *iterations += 1;
            if *iterations > cap {
                return Err(Error::resource(format!("simplex iteration cap {cap} reached")));
            }
            is_basic[self.basis[r]] = false;
            is_basic[c] = true;
            self.pivot(r, c);
        }
    }
}

/// Column bookkeeping between the user's program and the internal
/// `Ax = b, x ≥ 0, b ≥ 0` form.
struct StandardForm {
    cols: usize,
    tableau: Tableau,
    /// Standard-form columns of each original variable: (plus, minus).
    var_cols: Vec<(usize, Option<usize>)>,
    artificial_start: usize,
    /// Column that formed the identity in each row at the start.
    initial_basic: Vec<usize>,
    /// `±1`: the factor applied to each original row to make its rhs ≥ 0.
    row_sign: Vec<f64>,
}

impl StandardForm {
    fn new(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.vars.len());
        let mut next = 0;
        for kind in &lp.vars {
            match kind {
                VarKind::NonNegative => {
                    var_cols.push((next, None));
                    next += 1;
                }
                VarKind::Free => {
                    var_cols.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let structural = next;
        let rows = lp.constraints.len();
        let row_sign: Vec<f64> = lp.constraints.iter().map(|c| if c.rhs < 0.0 { -1.0 } else { 1.0 }).collect();
        let relations: Vec<Relation> = lp
            .constraints
            .iter()
            .zip(&row_sign)
            .map(|(c, &s)| match (c.relation, s < 0.0) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            })
            .collect();
        let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
        let artificial_start = structural + slack_count;
        let artificial_count = relations.iter().filter(|r| **r != Relation::Le).count();
        let cols = artificial_start + artificial_count;

        let width = cols + 1;
        let mut data = vec![0.0; rows * width];
        let mut initial_basic = Vec::with_capacity(rows);
        let mut slack = structural;
        let mut artificial = artificial_start;
        for (i, c) in lp.constraints.iter().enumerate() {
            let s = row_sign[i];
            let row = &mut data[i * width..(i + 1) * width];
            for (j, &a) in c.coeffs.iter().enumerate() {
                let (plus, minus) = var_cols[j];
                row[plus] += s * a;
                if let Some(m) = minus {
                    row[m] -= s * a;
                }
            }
            row[cols] = s * c.rhs;
            match relations[i] {
                Relation::Le => {
                    row[slack] = 1.0;
                    initial_basic.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[artificial] = 1.0;
                    initial_basic.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = 1.0;
                    initial_basic.push(artificial);
                    artificial += 1;
                }
            }
        }
        let tableau = Tableau { rows, cols, data, basis: initial_basic.clone() };
        StandardForm { cols, tableau, var_cols, artificial_start, initial_basic, row_sign }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.artificial_start
    }

    /// Pivots zero-level artificials out of the basis where a structural or
    /// slack column allows it. Rows with no such column are redundant and
    /// keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.tableau.rows {
            if !self.is_artificial(self.tableau.basis[r]) {
                continue;
            }
            let in_basis: Vec<bool> = {
                let mut v = vec![false; self.cols];
                for &b in &self.tableau.basis {
                    v[b] = true;
                }
                v
            };
            if let Some(c) =
                (0..self.artificial_start).find(|&j| !in_basis[j] && self.tableau.at(r, j).abs() > PIVOT_TOL)
            {
                self.tableau.pivot(r, c);
            }
        }
    }

    fn phase_two_cost(&self, lp: &LinearProgram) -> Vec<f64> {
        let mut cost = vec![0.0; self.cols];
        for (j, &(plus, minus)) in self.var_cols.iter().enumerate() {
            cost[plus] = lp.objective[j];
            if let Some(m) = minus {
                cost[m] = -lp.objective[j];
            }
        }
        cost
    }

    fn original_primal(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.cols];
        for (i, &b) in self.tableau.basis.iter().enumerate() {
            x[b] = self.tableau.rhs(i).max(0.0);
        }
        self.var_cols.iter().map(|&(plus, minus)| x[plus] - minus.map_or(0.0, |m| x[m])).collect()
    }

    /// `yᵀ = c_Bᵀ B⁻¹`, where column `i` of `B⁻¹` sits under the row's
    /// initial identity column, mapped back to the original row signs.
    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        self.initial_basic
            .iter()
            .zip(&self.row_sign)
            .map(|(&col, &s)| {
                let y: f64 =
                    (0..self.tableau.rows).map(|k| cost[self.tableau.basis[k]] * self.tableau.at(k, col)).sum();
                s * y
            })
            .collect()
    }
}

/// Optimality certificate for a solution, computed from the original data.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub duals: Vec<f64>,
    /// Worst violation of dual sign constraints and reduced-cost conditions.
    pub dual_infeasibility: f64,
    /// Worst `|yᵢ·slackᵢ|` or `|xⱼ·rⱼ|`.
    pub complementarity: f64,
    /// `|cᵀx − bᵀy|`.
    pub duality_gap: f64,
    pub primal_infeasibility: f64,
}

impl DualCertificate {
    pub fn worst(&self) -> f64 {
        self.dual_infeasibility.max(self.complementarity).max(self.duality_gap).max(self.primal_infeasibility)
    }
}

/// Checks the multipliers stored in an optimal solution against the
/// program: `r = c − Aᵀy` must be ≥ 0 on non-negative variables and 0 on free
/// ones, `y ≤ 0` on `≤` rows and `y ≥ 0` on `≥` rows, with complementary
/// slackness and zero duality gap.
pub fn dual_certificate(lp: &LinearProgram, sol: &LpSolution) -> Result<DualCertificate> {
    if sol.status != LpStatus::Optimal {
        return Err(Error::input("dual certificate needs an optimal solution"));
    }
    let y = &sol.duals;
    let x = &sol.primal;
    let mut dual_inf: f64 = 0.0;
    let mut comp: f64 = 0.0;
    for (c, &yi) in lp.constraints.iter().zip(y) {
        match c.relation {
            Relation::Le => dual_inf = dual_inf.max(yi.max(0.0)),
            Relation::Ge => dual_inf = dual_inf.max((-yi).max(0.0)),
            Relation::Eq => {}
        }
        comp = comp.max((yi * (c.activity(x) - c.rhs)).abs());
    }
    for j in 0..lp.num_vars() {
        let r = lp.objective[j] - lp.constraints.iter().zip(y).map(|(c, yi)| c.coeffs[j] * yi).sum::<f64>();
        match lp.vars[j] {
            VarKind::NonNegative => dual_inf = dual_inf.max((-r).max(0.0)),
            VarKind::Free => dual_inf = dual_inf.max(r.abs()),
        }
        comp = comp.max((x[j] * r).abs());
    }
    let dual_value: f64 = lp.constraints.iter().zip(y).map(|(c, yi)| c.rhs * yi).sum();
    Ok(DualCertificate {
        duals: y.clone(),
        dual_infeasibility: dual_inf,
        complementarity: comp,
        duality_gap: (lp.evaluate(x) - dual_value).abs(),
        primal_infeasibility: lp.max_violation(x),
    })
}

/// Variable layout of [`build_chebyshev_lp`]: `n` centre coordinates, then
/// `m·n` envelopes (point-major), then the radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChebyshevLayout {
    pub n: usize,
    pub m: usize,
}

impl ChebyshevLayout {
    pub fn centre(&self, i: usize) -> usize {
        i
    }

    pub fn envelope(&self, a: usize, i: usize) -> usize {
        self.n + a * self.n + i
    }

    pub fn radius(&self) -> usize {
        self.n + self.m * self.n
    }

    pub fn num_vars(&self) -> usize {
        self.radius() + 1
    }
}

/// Minimax program for a polyhedral space (weighted ℓ¹ or a ⊕₁ sum of them):
///
/// ```text
/// minimize r
///   t[a,i] ≥  v[i] − a[i]
///   t[a,i] ≥ −v[i] + a[i]
///   Σᵢ wᵢ t[a,i] ≤ r          for each a
///   v, r free;  t ≥ 0
/// ```
///
/// Its optimal value is the circumradius of the point set.
pub fn build_chebyshev_lp(space: &SpaceSpec, points: &PointSet) -> Result<(LinearProgram, ChebyshevLayout)> {
    let weights = space
        .polyhedral_weights()
        .ok_or_else(|| Error::input(format!("the LP route needs a weighted l1 space, got {space}")))?;
    if points.space() != space {
        return Err(Error::input("point set lives in a different space"));
    }
    let layout = ChebyshevLayout { n: weights.len(), m: points.len() };
    let nv = layout.num_vars();
    let mut objective = vec![0.0; nv];
    objective[layout.radius()] = 1.0;
    let mut vars = vec![VarKind::NonNegative; nv];
    for i in 0..layout.n {
        vars[layout.centre(i)] = VarKind::Free;
    }
    vars[layout.radius()] = VarKind::Free;
    let mut lp = LinearProgram::new(objective, vars)?;
    for (k, a) in points.points().iter().enumerate() {
        for i in 0..layout.n {
            let mut row = vec![0.0; nv];
            row[layout.centre(i)] = 1.0;
            row[layout.envelope(k, i)] = -1.0;
            lp.add_constraint(row, Relation::Le, a[i])?;
            let mut row = vec![0.0; nv];
            row[layout.centre(i)] = -1.0;
            row[layout.envelope(k, i)] = -1.0;
            lp.add_constraint(row, Relation::Le, -a[i])?;
        }
        let mut row = vec![0.0; nv];
        for (i, w) in weights.iter().enumerate() {
            row[layout.envelope(k, i)] = *w;
        }
        row[layout.radius()] = -1.0;
        lp.add_constraint(row, Relation::Le, 0.0)?;
    }
    Ok((lp, layout))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp1(obj: f64, kind: VarKind) -> LinearProgram {
        LinearProgram::new(vec![obj], vec![kind]).unwrap()
    }

    #[test]
    fn single_lower_bound() {
        let mut lp = lp1(1.0, VarKind::Free);
        lp.add_constraint(vec![1.0], Relation::Ge, 3.0).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 3.0).abs() < 1e-12);
        let cert = dual_certificate(&lp, &sol).unwrap();
        assert!(cert.worst() < 1e-12, "{cert:?}");
        assert!((cert.duals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = lp1(1.0, VarKind::NonNegative);
        lp.add_constraint(vec![1.0], Relation::Le, -1.0).unwrap();
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);

        let mut lp = lp1(-1.0, VarKind::NonNegative);
        lp.add_constraint(vec![1.0], Relation::Ge, 1.0).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
        assert_eq!(sol.value, f64::NEG_INFINITY);
    }

    #[test]
    fn equality_rows_and_redundancy() {
        // min x + 2y  s.t.  x + y = 1, 2x + 2y = 2 (redundant), x, y ≥ 0
        let mut lp = LinearProgram::new(vec![1.0, 2.0], vec![VarKind::NonNegative; 2]).unwrap();
        lp.add_constraint(vec![1.0, 1.0], Relation::Eq, 1.0).unwrap();
        lp.add_constraint(vec![2.0, 2.0], Relation::Eq, 2.0).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 1.0).abs() < 1e-12);
        assert!(dual_certificate(&lp, &sol).unwrap().worst() < 1e-10);
    }

    #[test]
    fn iteration_cap_is_resource_error() {
        let mut lp = LinearProgram::new(vec![-1.0, -1.0], vec![VarKind::NonNegative; 2]).unwrap();
        lp.add_constraint(vec![1.0, 0.0], Relation::Le, 1.0).unwrap();
        lp.add_constraint(vec![0.0, 1.0], Relation::Le, 1.0).unwrap();
        let err = solve_lp_with(&lp, &LpOptions { max_iterations: 1 }).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn rejects_malformed_rows() {
        let mut lp = lp1(1.0, VarKind::Free);
        assert!(lp.add_constraint(vec![1.0, 2.0], Relation::Le, 0.0).is_err());
        assert!(lp.add_constraint(vec![f64::NAN], Relation::Le, 0.0).is_err());
        assert!(LinearProgram::new(vec![1.0], vec![]).is_err());
    }

    #[test]
    fn debug_dump_has_one_line_per_row() {
        let s = SpaceSpec::l1(1).unwrap();
        let a = PointSet::from_coords(s.clone(), vec![vec![0.0]]).unwrap();
        let (lp, _) = build_chebyshev_lp(&s, &a).unwrap();
        let text = lp.to_string();
        assert_eq!(text.lines().filter(|l| l.starts_with('c')).count(), lp.constraints().len());
        assert!(text.starts_with("min: +1 x2"));
    }

    #[test]
    fn chebyshev_lp_examples() {
        let s = SpaceSpec::l1(1).unwrap();
        let a = PointSet::from_coords(s.clone(), vec![vec![0.0]]).unwrap();
        let (lp, _) = build_chebyshev_lp(&s, &a).unwrap();
        assert!(solve_lp(&lp).unwrap().value.abs() < 1e-12);

        let s = SpaceSpec::weighted_l1(vec![0.5, 0.5]).unwrap();
        let a = PointSet::from_coords(s.clone(), vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let (lp, _) = build_chebyshev_lp(&s, &a).unwrap();
        assert!((solve_lp(&lp).unwrap().value - 0.5).abs() < 1e-12);

        let s = SpaceSpec::l1(2).unwrap();
        let a = PointSet::from_coords(
            s.clone(),
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
        )
        .unwrap();
        let (lp, layout) = build_chebyshev_lp(&s, &a).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.value - 1.0).abs() < 1e-12);
        assert!((sol.primal[layout.radius()] - 1.0).abs() < 1e-12);
        assert!(dual_certificate(&lp, &sol).unwrap().worst() < 1e-10);
    }

    #[test]
    fn chebyshev_lp_rejects_trace_class() {
        let s = SpaceSpec::trace_class(2).unwrap();
        let a = PointSet::new(s.clone(), vec![s.zero()]).unwrap();
        assert!(matches!(build_chebyshev_lp(&s, &a), Err(Error::Input(_))));
    }
}
