//! Configuration and commands behind the `h3helix` binary.

pub mod mesh;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use helix_h3::families::{standard_family_matrix, Family, FamilyDescriptor};
use helix_h3::surface::{analyze_grid, Grid};
use helix_h3::verify::{family::run_suites, run_family_matrix, ResidualSuite, SuiteName, Tolerances, DEFAULT_SEED};
use helix_h3::GeomError;

/// Smallest accepted grid along each parameter.
pub const MIN_GRID: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("geometry error: {0}")]
    Geometry(#[from] GeomError),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<helix_h3::verify::ConfigError> for CliError {
    fn from(e: helix_h3::verify::ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Which surfaces a run covers.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Family(FamilyDescriptor<f64>),
    /// `"standard-matrix"`: every classified family on a fixed parameter sample.
    Matrix(MatrixTag),
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixTag {
    StandardMatrix,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: Target,
    /// Overrides the descriptor's grid; required for the matrix.
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub suites: Vec<String>,
    /// Output directory.
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

/// Command-line values layered over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tol: Vec<String>,
    pub out: Option<PathBuf>,
    pub suite: Vec<String>,
}

/// A config with overrides applied and everything validated.
#[derive(Clone, Debug)]
pub struct Run {
    pub target: Target,
    pub grid: Grid,
    pub suites: Vec<SuiteName>,
    pub out: PathBuf,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Run {
    pub fn load(path: &Path, o: &Overrides) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::resolve(cfg, o)
    }

    pub fn resolve(cfg: RunConfig, o: &Overrides) -> Result<Self, CliError> {
        let grid = match (&cfg.family, cfg.grid) {
            (_, Some(g)) => g,
            (Target::Family(d), None) => d.grid,
            (Target::Matrix(_), None) => return Err(CliError::Config("the family matrix needs a grid".into())),
        };
        grid.validate(MIN_GRID).map_err(|e| CliError::Config(e.to_string()))?;
        let mut target = cfg.family;
        if let Target::Family(d) = &mut target {
            d.grid = grid;
            d.domain.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        let mut tolerances = Tolerances::default();
        for (k, v) in &cfg.tolerances {
            tolerances.set(k, *v)?;
        }
        for spec in &o.tol {
            tolerances.apply(spec)?;
        }
        let names = if o.suite.is_empty() { cfg.suites } else { o.suite.clone() };
        let mut suites = names.iter().map(|s| s.parse::<SuiteName>()).collect::<Result<Vec<_>, _>>()?;
        if suites.is_empty() {
            suites.push(SuiteName::All);
        }
        Ok(Self {
            target,
            grid,
            suites,
            out: o.out.clone().or(cfg.out).unwrap_or_else(|| PathBuf::from(".")),
            seed: o.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
            tolerances,
        })
    }

    fn family(&self) -> Result<Family<f64>, CliError> {
        match &self.target {
            Target::Family(d) => Ok(Family::build(d)?),
            Target::Matrix(_) => Err(CliError::Config("this command needs a single family".into())),
        }
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(path)
}

pub const SAMPLES_FILE: &str = "samples.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SUITE_FILE: &str = "suite.json";
pub const MESH_FILE: &str = "mesh.obj";

/// Writes the per-sample CSV and the JSON summary.
pub fn cmd_analyze(run: &Run) -> Result<Vec<PathBuf>, CliError> {
    let family = run.family()?;
    let report = analyze_grid(&family.patch, &run.grid)?;
    Ok(vec![
        write(&run.out, SAMPLES_FILE, &report.to_csv())?,
        write(&run.out, SUMMARY_FILE, &(report.summary_json() + "\n"))?,
    ])
}

/// Runs the requested suites and writes the report.
pub fn cmd_verify(run: &Run) -> Result<(ResidualSuite, PathBuf), CliError> {
    let suite = match &run.target {
        Target::Family(_) => run_suites(&run.family()?, &run.suites, run.seed, &run.tolerances)?,
        Target::Matrix(_) => {
            if run.suites != [SuiteName::All] {
                return Err(CliError::Config("the family matrix only runs suite `all`".into()));
            }
            run_family_matrix(&standard_family_matrix(run.grid), run.seed, &run.tolerances)?
        }
    };
    let path = write(&run.out, SUITE_FILE, &(suite.to_json() + "\n"))?;
    Ok((suite, path))
}

/// Writes the OBJ mesh.
pub fn cmd_mesh(run: &Run) -> Result<PathBuf, CliError> {
    let family = run.family()?;
    let obj = mesh::to_obj(&family, &run.grid)?;
    write(&run.out, MESH_FILE, &obj)
}
