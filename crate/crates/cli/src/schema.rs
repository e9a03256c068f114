//! JSON scenario format. See `docs/schema.md` for the user-facing description.

use std::path::Path;

use l1fixed_core::groups::{generate_closure, presets, Cocycle, GroupElements};
use l1fixed_core::{AffineIsometry, CMatrix, LinearIsometry, Point, Selection, SpaceSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Radius,
    Centre,
    FixedPoint,
    Trivialize,
    Derivation,
    EmbeddedCentre,
    Check,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Radius => "radius",
            Task::Centre => "centre",
            Task::FixedPoint => "fixed_point",
            Task::Trivialize => "trivialize",
            Task::Derivation => "derivation",
            Task::EmbeddedCentre => "embedded_centre",
            Task::Check => "check",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub task: Option<Task>,
    pub space: SpaceJson,
    #[serde(default)]
    pub points: Vec<PointJson>,
    pub group: Option<GroupJson>,
    pub cocycle: Option<CocycleJson>,
    pub derivation: Option<DerivationJson>,
    /// `V₀` for `embedded_centre`; `space` is then `V`.
    pub complement: Option<SpaceJson>,
    /// Candidate for `check`.
    pub candidate: Option<CandidateJson>,
    #[serde(default)]
    pub options: OptionsJson,
    #[serde(default)]
    pub expect: ExpectJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceJson {
    WeightedL1 { weights: Vec<f64> },
    L1 { dim: usize },
    TraceClass { dim: usize },
    DirectSum { summands: Vec<SpaceJson> },
}

impl SpaceJson {
    pub fn build(&self) -> Result<SpaceSpec, CliError> {
        Ok(match self {
            SpaceJson::WeightedL1 { weights } => SpaceSpec::weighted_l1(weights.clone())?,
            SpaceJson::L1 { dim } => SpaceSpec::l1(*dim)?,
            SpaceJson::TraceClass { dim } => SpaceSpec::trace_class(*dim)?,
            SpaceJson::DirectSum { summands } => {
                SpaceSpec::direct_sum(summands.iter().map(SpaceJson::build).collect::<Result<_, _>>()?)?
            }
        })
    }
}

/// A matrix entry: a real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Real(f64),
    Complex([f64; 2]),
}

impl EntryJson {
    fn value(self) -> Complex64 {
        match self {
            EntryJson::Real(x) => Complex64::new(x, 0.0),
            EntryJson::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// Rows of entries.
#[derive(Clone, Debug, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<EntryJson>>);

impl MatrixJson {
    pub fn build(&self, what: &str) -> Result<CMatrix, CliError> {
        let d = self.0.len();
        if d == 0 || self.0.iter().any(|r| r.len() != d) {
            return Err(CliError::input(format!("{what}: matrix must be square and non-empty")));
        }
        let entries = self.0.iter().flatten().map(|e| e.value()).collect();
        let m = CMatrix::from_row_major(d, entries);
        if !m.is_finite() {
            return Err(CliError::input(format!("{what}: non-finite entry")));
        }
        Ok(m)
    }
}

/// Flat real coordinates, or a matrix for trace-class spaces.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Flat(Vec<f64>),
    Matrix(MatrixJson),
}

impl PointJson {
    pub fn build(&self, what: &str) -> Result<Point, CliError> {
        match self {
            PointJson::Flat(c) => Point::new(c.clone()).map_err(|e| CliError::input(format!("{what}: {e}"))),
            PointJson::Matrix(m) => Ok(Point::from_matrix(&m.build(what)?)),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LinearJson {
    SignedPermutation {
        perm: Vec<usize>,
        #[serde(default)]
        signs: Option<Vec<i8>>,
    },
    Unitary {
        unitary: MatrixJson,
    },
    Blocks {
        blocks: Vec<LinearJson>,
    },
}

impl LinearJson {
    pub fn build(&self, what: &str) -> Result<LinearIsometry, CliError> {
        let wrap = |e: l1fixed_core::Error| CliError::input(format!("{what}: {e}"));
        match self {
            LinearJson::SignedPermutation { perm, signs } => {
                let signs = signs.clone().unwrap_or_else(|| vec![1; perm.len()]);
                LinearIsometry::signed_permutation(perm.clone(), signs).map_err(wrap)
            }
            LinearJson::Unitary { unitary } => {
                LinearIsometry::unitary_conjugation(unitary.build(what)?).map_err(wrap)
            }
            LinearJson::Blocks { blocks } => Ok(LinearIsometry::BlockDiagonal(
                blocks.iter().enumerate().map(|(i, b)| b.build(&format!("{what}.blocks[{i}]"))).collect::<Result<_, _>>()?,
            )),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct GeneratorJson {
    #[serde(flatten)]
    pub linear: LinearJson,
    pub translation: Option<PointJson>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Preset {
        preset: PresetJson,
        #[serde(default)]
        dim: Option<usize>,
    },
    Generators {
        generators: Vec<GeneratorJson>,
    },
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetJson {
    Pauli,
    ClockShift,
}

impl GroupJson {
    pub fn build(&self, space: &SpaceSpec, cap: usize) -> Result<GroupElements, CliError> {
        let group = match self {
            GroupJson::Preset { preset, dim } => {
                let gens = match preset {
                    PresetJson::Pauli => presets::pauli(),
                    PresetJson::ClockShift => presets::clock_and_shift(dim.unwrap_or(3)),
                };
                presets::conjugation_group(&gens, cap)?
            }
            GroupJson::Generators { generators } => {
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let what = format!("group.generators[{i}]");
                        let lin = g.linear.build(&what)?;
                        let t = match &g.translation {
                            Some(t) => t.build(&format!("{what}.translation"))?,
                            None => space.zero(),
                        };
                        AffineIsometry::new(space, lin, t).map_err(|e| CliError::input(format!("{what}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                generate_closure(space, &gens, cap)?
            }
        };
        if group.space() != space {
            return Err(CliError::input(format!("group acts on {} but the scenario space is {space}", group.space())));
        }
        Ok(group)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CocycleJson {
    /// `b(g) = v₀ − π(g)v₀`.
    Coboundary { coboundary: PointJson },
    /// One value per group element, in closure order.
    Values { values: Vec<PointJson> },
}

impl CocycleJson {
    pub fn build(&self, group: &GroupElements) -> Result<Cocycle, CliError> {
        match self {
            CocycleJson::Coboundary { coboundary } => {
                Ok(l1fixed_core::groups::coboundary(group, &coboundary.build("cocycle.coboundary")?)?)
            }
            CocycleJson::Values { values } => {
                let pts = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.build(&format!("cocycle.values[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Cocycle::new(group.clone(), pts)?)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DerivationJson {
    /// `D(u) = w u − u w`.
    Inner { inner: MatrixJson },
    /// `D(u_g)` per group element, in closure order.
    Values { values: Vec<MatrixJson> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateJson {
    pub centre: PointJson,
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionJson {
    #[default]
    MinL2,
    AnyVertex,
}

impl From<SelectionJson> for Selection {
    fn from(s: SelectionJson) -> Self {
        match s {
            SelectionJson::MinL2 => Selection::MinL2Tiebreak,
            SelectionJson::AnyVertex => Selection::AnyVertex,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsJson {
    #[serde(default)]
    pub selection: SelectionJson,
    pub iters: Option<usize>,
    pub seed: Option<u64>,
    /// Tolerance of membership checks and expectation comparisons.
    pub tol: Option<f64>,
    pub max_group: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectJson {
    pub radius: Option<f64>,
    pub point: Option<PointJson>,
    /// For `check`: whether the candidate should be accepted.
    pub member: Option<bool>,
    pub tol: Option<f64>,
}

/// Reads and parses a scenario, naming the failing field on error.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: cannot read: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message())))
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::input(format!(
            "parse error at line {} column {} (field `{path}`): {inner}",
            inner.line(),
            inner.column()
        ))
    })
}
