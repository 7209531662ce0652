//! Residual suites: named checks with tolerances and pass/fail verdicts.
//!
//! All checks run in `f64`.

pub mod ambient;
pub mod family;
pub mod parallel;
pub mod surface;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::Grid;

pub use ambient::check_ambient;
pub use family::{check_claims, check_family, check_profile, run_family_matrix, FamilyObservation};
pub use parallel::{check_parallel, parallel_residuals, parallel_frame, ParallelCheckInput};
pub use surface::{check_codazzi, check_gauss, check_helix_ode, check_surface, interior_points};

/// Seed used by randomized checks when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Problems with a requested suite or tolerance; distinct from geometry failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("tolerance override `{0}` is not of the form NAME=VALUE with VALUE ≥ 0")]
    BadTolerance(String),
}

const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("adapted_connection", 1e-5),
    ("angle_decomposition", 1e-8),
    ("bracket", 1e-9),
    ("cmc_iff_parallel", 0.0),
    ("cmc_nonzero", 0.0),
    ("cmc_range", 1e-8),
    ("codazzi", 1e-4),
    ("connection_closed_form", 0.0),
    ("connection_fd", 1e-6),
    ("constant_curvature", 1e-6),
    ("curvature_closed_form", 0.0),
    ("curvature_fd", 1e-6),
    ("curvature_random", 1e-10),
    ("epsilon", 0.0),
    ("expected_cmc", 0.0),
    ("frame_orthonormality", 1e-12),
    ("gauss", 1e-5),
    ("h_equals_half_mu", 1e-8),
    ("helix_k_constant", 1e-6),
    ("helix_ode", 1e-5),
    ("k_constant", 1e-6),
    ("killing_e3", 0.0),
    ("minimal", 1e-8),
    ("minkowski", 1e-10),
    ("mu_closed_form", 1e-5),
    ("nabla_e3", 1e-7),
    ("non_cmc", 0.0),
    ("non_umbilical", 1e-6),
    ("nu_constant", 1e-7),
    ("parallel", 1e-5),
    ("parallel_implies_cmc", 0.0),
    ("profile_constraints_analytic", 1e-10),
    ("profile_constraints_quadrature", 1e-8),
    ("s_pattern", 1e-6),
    ("structure", 1e-5),
];

/// Per-check tolerances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Self(DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }
}

impl Tolerances {
    pub fn get(&self, id: &str) -> f64 {
        *self.0.get(id).unwrap_or_else(|| panic!("no tolerance for check `{id}`"))
    }

    pub fn set(&mut self, id: &str, value: f64) -> Result<(), ConfigError> {
        if !(value >= 0.0) {
            return Err(ConfigError::BadTolerance(format!("{id}={value}")));
        }
        match self.0.get_mut(id) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(ConfigError::UnknownCheck(id.to_string())),
        }
    }

    /// Applies a `NAME=VALUE` override.
    pub fn apply(&mut self, spec: &str) -> Result<(), ConfigError> {
        let (name, value) = spec.split_once('=').ok_or_else(|| ConfigError::BadTolerance(spec.into()))?;
        let value: f64 = value.trim().parse().map_err(|_| ConfigError::BadTolerance(spec.into()))?;
        self.set(name.trim(), value)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn of(residual: f64, tol: f64) -> Self {
        if residual <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub max_residual: f64,
    pub tol: f64,
    pub verdict: Verdict,
    /// A measured quantity the check reports alongside its residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

/// Boolean claims are recorded as residual 0 (holds) or 1 (violated).
pub fn claim(holds: bool) -> f64 {
    if holds {
        0.0
    } else {
        1.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualSuite {
    pub suite: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub patch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl ResidualSuite {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        Self { suite: suite.into(), seed, patch: None, grid: None, checks: Vec::new(), verdict: Verdict::Pass }
    }

    pub fn with_patch(mut self, patch: impl Into<String>, grid: Grid) -> Self {
        self.patch = Some(patch.into());
        self.grid = Some(grid);
        self
    }

    /// Records `residual` against the tolerance named `id`. NaN residuals fail.
    pub fn record(&mut self, tols: &Tolerances, id: &str, residual: f64) -> &mut CheckRecord {
        self.record_with(id, residual, tols.get(id))
    }

    /// Records under `id` with an explicit tolerance.
    pub fn record_with(&mut self, id: &str, residual: f64, tol: f64) -> &mut CheckRecord {
        let verdict = Verdict::of(residual, tol);
        if !verdict.passed() {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(CheckRecord { id: id.to_string(), max_residual: residual, tol, verdict, value: None });
        self.checks.last_mut().unwrap()
    }

    /// Appends another suite's checks with `prefix/` on their ids.
    pub fn absorb(&mut self, prefix: &str, other: ResidualSuite) {
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            if !c.verdict.passed() {
                self.verdict = Verdict::Fail;
            }
            self.checks.push(c);
        }
    }

    /// Sorts checks by id and recomputes the verdict.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.verdict = if self.checks.iter().all(|c| c.verdict.passed()) { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite is serializable")
    }
}

/// Suites runnable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    Ambient,
    Surface,
    Gauss,
    Codazzi,
    HelixOde,
    Parallel,
    Family,
    Profile,
    Claims,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Ambient,
        SuiteName::Surface,
        SuiteName::Gauss,
        SuiteName::Codazzi,
        SuiteName::HelixOde,
        SuiteName::Parallel,
        SuiteName::Family,
        SuiteName::Profile,
        SuiteName::Claims,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Ambient => "ambient",
            SuiteName::Surface => "surface",
            SuiteName::Gauss => "gauss",
            SuiteName::Codazzi => "codazzi",
            SuiteName::HelixOde => "helix-ode",
            SuiteName::Parallel => "parallel",
            SuiteName::Family => "family",
            SuiteName::Profile => "profile",
            SuiteName::Claims => "claims",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

/// Maximum of a sequence, NaN-propagating, 0 when empty.
pub(crate) fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m: f64, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}
