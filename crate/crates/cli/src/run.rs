//! Scenario execution.

use std::path::Path;
use std::time::Instant;

use l1fixed_core::chebyshev::verify_centre;
use l1fixed_core::fixedpoint::{check_embedded_centre, solve_derivation};
use l1fixed_core::groups::{Cocycle, GroupElements, DEFAULT_GROUP_CAP};
use l1fixed_core::{
    chebyshev_centre_with, invariant_point, trivialize_cocycle, CentreOptions, Derivation, Method, Point, PointSet,
    SpaceSpec,
};

use crate::error::CliError;
use crate::report::{Check, Report, Results, Status};
use crate::schema::{load_scenario, DerivationJson, Scenario, Task};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const FIXED_RESIDUAL_TOL: f64 = 1e-9;
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
pub const INNER_RESIDUAL_TOL: f64 = 1e-7;
pub const BOUND_SLACK: f64 = 1e-6;

/// Command-line settings that take precedence over the scenario's options.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub task: Option<Task>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub max_group: Option<usize>,
    pub iters: Option<usize>,
}

/// Loads and runs one scenario file. Never fails: errors become report statuses.
pub fn run_scenario(path: &Path, overrides: &Overrides) -> Report {
    let start = Instant::now();
    let mut report = match load_scenario(path) {
        Ok(s) => execute(&s, overrides),
        Err(e) => {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Report::failed(stem, overrides.task, e.status, e.message)
        }
    };
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// Runs a parsed scenario.
pub fn execute(scenario: &Scenario, overrides: &Overrides) -> Report {
    let start = Instant::now();
    let task = overrides.task.or(scenario.task);
    let mut report = match task {
        None => Report::failed(&scenario.name, None, Status::InputError, "scenario has no task"),
        Some(task) => match Context::new(scenario, overrides).and_then(|cx| cx.run(task)) {
            Ok((results, checks)) => {
                let status = if checks.iter().all(|c| c.passed) { Status::Ok } else { Status::CheckFailed };
                let message = (status == Status::CheckFailed).then(|| {
                    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                    format!("failed checks: {}", failed.join(", "))
                });
                Report { name: scenario.name.clone(), task: Some(task), status, message, results, checks, wall_ms: 0.0 }
            }
            Err(e) => Report::failed(&scenario.name, Some(task), e.status, e.message),
        },
    };
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

struct Context<'a> {
    scenario: &'a Scenario,
    space: SpaceSpec,
    opts: CentreOptions,
    tol: f64,
    expect_tol: f64,
    cap: usize,
}

type Outcome = Result<(Results, Vec<Check>), CliError>;

fn method_name(m: Method) -> String {
    match m {
        Method::Lp => "lp".into(),
        Method::Subgradient => "subgradient".into(),
    }
}

impl<'a> Context<'a> {
    fn new(scenario: &'a Scenario, overrides: &Overrides) -> Result<Self, CliError> {
        let o = &scenario.options;
        let space = scenario.space.build()?;
        let mut opts = CentreOptions { selection: o.selection.into(), ..Default::default() };
        if let Some(iters) = overrides.iters.or(o.iters) {
            opts.iters = iters;
        }
        if let Some(seed) = overrides.seed.or(o.seed) {
            opts.seed = seed;
        }
        let tol = overrides.tol.or(o.tol).unwrap_or(DEFAULT_TOL);
        if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
            return Err(CliError::input("tol must be positive and finite"));
        }
        let expect_tol = overrides.tol.or(scenario.expect.tol).unwrap_or(tol);
        let cap = overrides.max_group.or(o.max_group).unwrap_or(DEFAULT_GROUP_CAP);
        Ok(Context { scenario, space, opts, tol, expect_tol, cap })
    }

    fn run(&self, task: Task) -> Outcome {
        match task {
            Task::Radius => self.centre(false),
            Task::Centre => self.centre(true),
            Task::FixedPoint => self.fixed_point(),
            Task::Trivialize => self.trivialize(),
            Task::Derivation => self.derivation(),
            Task::EmbeddedCentre => self.embedded(),
            Task::Check => self.check(),
        }
    }

    fn raw_points(&self) -> Result<Vec<Point>, CliError> {
        if self.scenario.points.is_empty() {
            return Err(CliError::input("field `points` is required and must be non-empty"));
        }
        self.scenario.points.iter().enumerate().map(|(i, p)| p.build(&format!("points[{i}]"))).collect()
    }

    fn points(&self) -> Result<PointSet, CliError> {
        PointSet::new(self.space.clone(), self.raw_points()?).map_err(|e| CliError::input(format!("points: {e}")))
    }

    fn group(&self) -> Result<GroupElements, CliError> {
        self.scenario.group.as_ref().ok_or_else(|| CliError::input("field `group` is required"))?.build(&self.space, self.cap)
    }

    fn expect_radius(&self, radius: f64, gap: f64, checks: &mut Vec<Check>) {
        if let Some(e) = self.scenario.expect.radius {
            checks.push(Check::new("expected_radius", (radius - e).abs(), self.expect_tol + gap));
        }
    }

    fn expect_point(&self, p: &Point, checks: &mut Vec<Check>) -> Result<(), CliError> {
        if let Some(e) = &self.scenario.expect.point {
            let e = e.build("expect.point")?;
            if e.len() != p.len() {
                return Err(CliError::input("expect.point has the wrong dimension"));
            }
            checks.push(Check::new("expected_point", p.max_diff(&e), self.expect_tol));
        }
        Ok(())
    }

    fn centre(&self, with_point: bool) -> Outcome {
        let a = self.points()?;
        let c = chebyshev_centre_with(&a, &self.opts)?;
        let mut checks = Vec::new();
        self.expect_radius(c.radius, c.gap, &mut checks);
        let mut results =
            Results { radius: Some(c.radius), gap: Some(c.gap), method: Some(method_name(c.method)), ..Default::default() };
        if with_point {
            let member = verify_centre(&a, &c.centre, c.radius, self.tol)?;
            checks.push(Check::new("centre_membership", member.max_distance - c.radius, self.tol));
            self.expect_point(&c.centre, &mut checks)?;
            results.point = Some(c.centre.into_coords());
            results.active = Some(c.active);
        }
        Ok((results, checks))
    }

    fn fixed_point(&self) -> Outcome {
        let a = self.points()?;
        let g = self.group()?;
        let r = invariant_point(&a, &g, &self.opts)?;
        let scale = a.max_norm().max(1.0);
        let mut checks = vec![
            Check::new("fixed_residual", r.residual, FIXED_RESIDUAL_TOL * scale),
            Check::new("radius_bound", r.radius - r.circumradius - r.gap, BOUND_SLACK),
        ];
        if r.norm_bound_ok.is_some() {
            let excess = a.space().norm_of(&r.point) - a.max_norm() - r.gap;
            checks.push(Check::new("norm_bound", excess, BOUND_SLACK));
        }
        self.expect_radius(r.radius, r.gap, &mut checks);
        self.expect_point(&r.point, &mut checks)?;
        let results = Results {
            radius: Some(r.radius),
            point: Some(r.point.into_coords()),
            residual: Some(r.residual),
            norm_bound_ok: r.norm_bound_ok,
            gap: Some(r.gap),
            method: Some(method_name(r.method)),
            group_order: Some(r.group_order),
            values: [("circumradius".to_owned(), r.circumradius)].into(),
            ..Default::default()
        };
        Ok((results, checks))
    }

    fn trivialize(&self) -> Outcome {
        let g = self.group()?;
        let b = match &self.scenario.cocycle {
            Some(c) => c.build(&g)?,
            None => Cocycle::from_affine_group(&g),
        };
        let r = trivialize_cocycle(&b, &self.opts)?;
        let sup = b.sup_norm();
        let v_norm = self.space.norm_of(&r.point);
        let mut checks = vec![
            Check::new("reconstruction", r.residual, RECONSTRUCTION_TOL * sup.max(1.0)),
            Check::new("norm_bound", v_norm - sup, BOUND_SLACK),
        ];
        self.expect_point(&r.point, &mut checks)?;
        let results = Results {
            radius: Some(r.radius),
            point: Some(r.point.into_coords()),
            residual: Some(r.residual),
            norm_bound_ok: r.norm_bound_ok,
            gap: Some(r.gap),
            method: Some(method_name(r.method)),
            group_order: Some(r.group_order),
            values: [("v_norm".to_owned(), v_norm), ("sup_b_norm".to_owned(), sup)].into(),
            ..Default::default()
        };
        Ok((results, checks))
    }

    fn derivation(&self) -> Outcome {
        let g = self.group()?;
        let spec = self.scenario.derivation.as_ref().ok_or_else(|| CliError::input("field `derivation` is required"))?;
        let d = match spec {
            DerivationJson::Inner { inner } => Derivation::inner(g, &inner.build("derivation.inner")?)?,
            DerivationJson::Values { values } => {
                let values = values
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.build(&format!("derivation.values[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Derivation::new(g, values)?
            }
        };
        let sol = solve_derivation(&d, &self.opts)?;
        let v_norm = sol.v.trace_norm();
        let checks = vec![
            Check::new("inner_residual", sol.inner_residual, INNER_RESIDUAL_TOL * sol.derivation_norm.max(1.0)),
            Check::new("norm_bound", v_norm - sol.derivation_norm, BOUND_SLACK),
            Check::new("reconstruction", sol.fixed.residual, RECONSTRUCTION_TOL * sol.derivation_norm.max(1.0)),
        ];
        let results = Results {
            radius: Some(sol.fixed.radius),
            point: Some(sol.v.to_real_coords()),
            residual: Some(sol.inner_residual),
            norm_bound_ok: Some(sol.norm_bound_ok),
            gap: Some(sol.fixed.gap),
            method: Some(method_name(sol.fixed.method)),
            group_order: Some(sol.fixed.group_order),
            values: [("v_norm".to_owned(), v_norm), ("derivation_norm".to_owned(), sol.derivation_norm)].into(),
            ..Default::default()
        };
        Ok((results, checks))
    }

    fn embedded(&self) -> Outcome {
        let v0 = self
            .scenario
            .complement
            .as_ref()
            .ok_or_else(|| CliError::input("field `complement` is required"))?
            .build()?;
        let rep = check_embedded_centre(&self.space, &v0, &self.raw_points()?, &self.opts)?;
        let checks = vec![
            Check::new("complement_norm", rep.v0_norm, BOUND_SLACK),
            Check::new("radius_difference", rep.radius_diff, self.tol + rep.gap),
        ];
        let results = Results {
            radius: Some(rep.radius_w),
            point: Some(rep.centre_w.into_coords()),
            gap: Some(rep.gap),
            values: [
                ("radius_v".to_owned(), rep.radius_v),
                ("complement_norm".to_owned(), rep.v0_norm),
                ("radius_difference".to_owned(), rep.radius_diff),
            ]
            .into(),
            ..Default::default()
        };
        Ok((results, checks))
    }

    fn check(&self) -> Outcome {
        let a = self.points()?;
        let cand = self.scenario.candidate.as_ref().ok_or_else(|| CliError::input("field `candidate` is required"))?;
        let c = cand.centre.build("candidate.centre")?;
        let res = verify_centre(&a, &c, cand.radius, self.tol)?;
        let expected = self.scenario.expect.member.unwrap_or(true);
        let checks = vec![Check::new("membership_as_expected", f64::from(u8::from(res.ok != expected)), 0.0)];
        let results = Results {
            radius: Some(cand.radius),
            point: Some(c.into_coords()),
            member: Some(res.ok),
            values: [
                ("max_distance".to_owned(), res.max_distance),
                ("violations".to_owned(), res.violations.len() as f64),
            ]
            .into(),
            ..Default::default()
        };
        Ok((results, checks))
    }
}
