//! Grid sweeps and their serialized reports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::scalar::Real;

use super::geometry::{local_geometry, LocalGeometry, ShapeBasis};
use super::{intrinsic, Grid, SurfacePatch};

/// One grid sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub u: f64,
    pub v: f64,
    pub nu: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "K_ext")]
    pub k_ext: f64,
    /// `None` when the difference stencil leaves the domain.
    #[serde(rename = "K_int")]
    pub k_int: Option<f64>,
    pub eps: i8,
    /// `[S₁₁, S₁₂, S₂₁, S₂₂]` in the report's shape basis.
    pub s: [f64; 4],
    /// Coordinate components of `T`.
    pub t: [f64; 3],
    pub g_tt: f64,
}

/// Mean and extremes of a sampled field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub range: f64,
}

impl Stats {
    /// Sequential, so the result does not depend on thread scheduling.
    pub fn of<I: IntoIterator<Item = f64>>(values: I) -> Option<Self> {
        let mut n = 0usize;
        let (mut sum, mut min, mut max) = (0.0, f64::INFINITY, f64::NEG_INFINITY);
        for x in values {
            n += 1;
            sum += x;
            min = min.min(x);
            max = max.max(x);
        }
        (n > 0).then(|| Stats { mean: sum / n as f64, min, max, range: max - min })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub samples: usize,
    pub intrinsic_samples: usize,
    /// `None` when samples disagree.
    pub epsilon: Option<i8>,
    pub shape_basis: ShapeBasis,
    pub nu: Stats,
    #[serde(rename = "H")]
    pub h: Stats,
    #[serde(rename = "K_ext")]
    pub k_ext: Stats,
    #[serde(rename = "K_int")]
    pub k_int: Option<Stats>,
    /// `max |K_int − K_ext|`.
    pub max_gauss_residual: Option<f64>,
    /// `max |g(T,T) − (δ − εν²)|`.
    pub max_angle_decomposition_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub grid: Grid,
    pub records: Vec<SampleRecord>,
    pub summary: GridSummary,
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

struct Sample<T> {
    geo: LocalGeometry<T>,
    k_int: Option<T>,
}

fn sample<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<Sample<T>> {
    let geo = local_geometry(patch, u, v)?;
    let k_int = match intrinsic::gaussian_curvature_intrinsic(patch, u, v) {
        Ok(k) => Some(k),
        Err(GeomError::OutOfDomain { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Sample { geo, k_int })
}

/// Evaluates the patch on every grid sample.
///
/// Samples are computed in parallel and gathered in grid order; the first
/// failing sample in that order determines the error.
pub fn analyze_grid<T: Real>(patch: &SurfacePatch<T>, grid: &Grid) -> Result<GeometryReport> {
    let points = grid.points(patch.domain());
    let results: Vec<Result<Sample<T>>> = points.par_iter().map(|&(u, v)| sample(patch, u, v)).collect();
    let samples = results.into_iter().collect::<Result<Vec<_>>>()?;

    let adapted: Option<Vec<_>> = samples
        .iter()
        .map(|s| s.geo.shape_in(ShapeBasis::AdaptedTjt).ok())
        .collect();
    let (basis, shapes) = match adapted {
        Some(m) => (ShapeBasis::AdaptedTjt, m.into_iter().map(|s| s.m).collect::<Vec<_>>()),
        None => (ShapeBasis::Coordinate, samples.iter().map(|s| s.geo.shape).collect()),
    };

    let records: Vec<SampleRecord> = samples
        .iter()
        .zip(&shapes)
        .map(|(s, m)| {
            let g = &s.geo;
            let t = g.coords(g.t_frame());
            SampleRecord {
                u: f(g.u),
                v: f(g.v),
                nu: f(g.nu),
                h: f(g.mean_curvature()),
                k_ext: f(g.gaussian_curvature_ext()),
                k_int: s.k_int.map(f),
                eps: g.first.epsilon.as_i8(),
                s: [f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1])],
                t: [f(t[0]), f(t[1]), f(t[2])],
                g_tt: f(g.t_norm()),
            }
        })
        .collect();

    let delta = f(patch.params().delta());
    let eps0 = records.first().map(|r| r.eps);
    let summary = GridSummary {
        samples: records.len(),
        intrinsic_samples: records.iter().filter(|r| r.k_int.is_some()).count(),
        epsilon: eps0.filter(|e| records.iter().all(|r| r.eps == *e)),
        shape_basis: basis,
        nu: Stats::of(records.iter().map(|r| r.nu)).ok_or_else(empty)?,
        h: Stats::of(records.iter().map(|r| r.h)).ok_or_else(empty)?,
        k_ext: Stats::of(records.iter().map(|r| r.k_ext)).ok_or_else(empty)?,
        k_int: Stats::of(records.iter().filter_map(|r| r.k_int)),
        max_gauss_residual: records
            .iter()
            .filter_map(|r| r.k_int.map(|k| (k - r.k_ext).abs()))
            .reduce(f64::max),
        max_angle_decomposition_residual: records
            .iter()
            .map(|r| (r.g_tt - (delta - r.eps as f64 * r.nu * r.nu)).abs())
            .fold(0.0, f64::max),
    };
    Ok(GeometryReport { grid: *grid, records, summary })
}

fn empty() -> GeomError {
    GeomError::InvalidGrid("grid has no samples".into())
}

/// `{:.16e}` prints 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl GeometryReport {
    pub const CSV_HEADER: &'static str = "u,v,nu,H,K_ext,K_int,eps,S11,S12,S21,S22";

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 1));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let k_int = r.k_int.map(fmt_f64).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                fmt_f64(r.u),
                fmt_f64(r.v),
                fmt_f64(r.nu),
                fmt_f64(r.h),
                fmt_f64(r.k_ext),
                k_int,
                r.eps,
                fmt_f64(r.s[0]),
                fmt_f64(r.s[1]),
                fmt_f64(r.s[2]),
                fmt_f64(r.s[3]),
            );
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary is serializable")
    }
}
