//! Surface checks on interior grid samples: Gauss, Codazzi, structure
//! equations, the adapted-frame connection and the helix ODE.

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::linalg::{apply2, M2};
use crate::surface::intrinsic::{covariant_derivative, directional_derivative, gaussian_curvature_intrinsic, induced_christoffel};
use crate::surface::{local_geometry, Grid, LocalGeometry, ShapeBasis, SurfacePatch};

use super::{max_of, ResidualSuite, Tolerances};

/// Largest `|ν − ν̄|` for which a patch still counts as constant-angle.
pub const HELIX_NU_RANGE: f64 = 1e-6;

/// Grid samples whose difference stencils stay inside the domain: boundary
/// rows and columns are dropped, as is anything within four steps of the edge.
pub fn interior_points(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<Vec<(f64, f64)>> {
    let h = patch.step();
    let spacing = grid.spacing(patch.domain());
    if 2.0 * h > spacing {
        return Err(GeomError::StencilTooCoarse { step: h, spacing });
    }
    let d = patch.domain();
    let pts = grid.points(d);
    Ok(pts
        .into_iter()
        .enumerate()
        .filter(|(n, _)| {
            let (i, j) = (n / grid.nv, n % grid.nv);
            i > 0 && j > 0 && i + 1 < grid.nu && j + 1 < grid.nv
        })
        .map(|(_, p)| p)
        .filter(|&(u, v)| d.contains(u, v, 4.0 * h))
        .collect())
}

/// Pointwise geometry on every grid sample, in grid order. Patches with
/// finite-difference jets skip samples closer to the boundary than
/// [`SurfacePatch::jet_margin`].
pub fn sample_grid(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<Vec<LocalGeometry<f64>>> {
    let d = patch.domain();
    let margin = patch.jet_margin();
    let pts: Vec<_> = grid.points(d).into_iter().filter(|&(u, v)| d.contains(u, v, margin)).collect();
    pts.par_iter().map(|&(u, v)| local_geometry(patch, u, v)).collect::<Vec<_>>().into_iter().collect()
}

/// Evaluates `f` on `points` in parallel and returns the largest value; the
/// first failing point in order determines the error.
pub(crate) fn max_over<F>(points: &[(f64, f64)], f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let r: Vec<Result<f64>> = points.par_iter().map(|&(u, v)| f(u, v)).collect();
    Ok(max_of(r.into_iter().collect::<Result<Vec<_>>>()?))
}

fn norm2(a: [f64; 2]) -> f64 {
    a[0].abs().max(a[1].abs())
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale2(a: [f64; 2], k: f64) -> [f64; 2] {
    [a[0] * k, a[1] * k]
}

const DU: [f64; 2] = [1.0, 0.0];
const DV: [f64; 2] = [0.0, 1.0];

/// `max |K_int − K_ext|`.
pub fn check_gauss(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let pts = interior_points(patch, grid)?;
    max_over(&pts, |u, v| {
        let k_int = gaussian_curvature_intrinsic(patch, u, v)?;
        let k_ext = local_geometry(patch, u, v)?.gaussian_curvature_ext();
        Ok((k_int - k_ext).abs())
    })
}

/// `(∇_X S)Y − (∇_Y S)X + 4δεντ²[g(X,T)Y − g(Y,T)X]` for `X = ∂u`, `Y = ∂v`.
///
/// With coordinate fields `[X,Y] = 0` and the torsion-free induced connection,
/// the left side reduces to `∇_X(SY) − ∇_Y(SX)`, computed in `(∂u, ∂v)`
/// coefficients from differenced `S`-columns and the induced Christoffels.
pub fn check_codazzi(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let pts = interior_points(patch, grid)?;
    let column = |k: usize| {
        move |u: f64, v: f64| -> Result<[f64; 2]> {
            let m = local_geometry(patch, u, v)?.shape;
            Ok([m[0][k], m[1][k]])
        }
    };
    max_over(&pts, |u, v| {
        let g = local_geometry(patch, u, v)?;
        let gamma = induced_christoffel(patch, u, v)?;
        let a = covariant_derivative(patch, &gamma, u, v, DU, column(1))?;
        let b = covariant_derivative(patch, &gamma, u, v, DV, column(0))?;
        let t = g.t_frame();
        let (gxt, gyt) = (g.dot(g.tangents[0], t), g.dot(g.tangents[1], t));
        let k = -4.0 * g.delta.value::<f64>() * g.epsilon() * g.nu * g.tau * g.tau;
        let rhs = [-k * gyt, k * gxt];
        Ok(norm2(sub2(sub2(a, b), rhs)))
    })
}

/// Coefficients of `T` and `JT`.
fn t_fields(g: &LocalGeometry<f64>) -> ([f64; 2], [f64; 2]) {
    let t = g.t_frame();
    (g.coefficients(t), g.coefficients(g.rotate(t)))
}

/// `∇_X T = ν(SX − δτJX)` and `X(ν) = −ε g(SX − δτJX, T)` for `X ∈ {∂u, ∂v}`.
pub fn check_structure(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let pts = interior_points(patch, grid)?;
    let t_field = |u: f64, v: f64| Ok(t_fields(&local_geometry(patch, u, v)?).0);
    let nu_field = |u: f64, v: f64| Ok([local_geometry(patch, u, v)?.nu]);
    max_over(&pts, |u, v| {
        let g = local_geometry(patch, u, v)?;
        let gamma = induced_christoffel(patch, u, v)?;
        let dt = g.delta.value::<f64>() * g.tau;
        let mut r: f64 = 0.0;
        for (x, dir) in [DU, DV].into_iter().enumerate() {
            let jx = g.coefficients(g.rotate(g.tangents[x]));
            let w = sub2(apply2(&g.shape, dir), scale2(jx, dt));
            let lhs = covariant_derivative(patch, &gamma, u, v, dir, t_field)?;
            r = r.max(norm2(sub2(lhs, scale2(w, g.nu))));
            let [dnu] = directional_derivative(patch, u, v, dir, nu_field)?;
            r = r.max((dnu + g.epsilon() * g.dot(g.vector(w), g.t_frame())).abs());
        }
        Ok(r)
    })
}

/// Induced connection in the adapted frame:
/// `∇_T T = −2δτν JT`, `∇_{JT} T = μν JT`, `∇_T JT = −2εδτν T`, `∇_{JT} JT = εμν T`.
pub fn check_adapted_connection(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let pts = interior_points(patch, grid)?;
    let t_field = |u: f64, v: f64| Ok(t_fields(&local_geometry(patch, u, v)?).0);
    let jt_field = |u: f64, v: f64| Ok(t_fields(&local_geometry(patch, u, v)?).1);
    max_over(&pts, |u, v| {
        let g = local_geometry(patch, u, v)?;
        let gamma = induced_christoffel(patch, u, v)?;
        let (t, jt) = t_fields(&g);
        let mu = g.shape_in(ShapeBasis::AdaptedTjt)?.m[1][1];
        let (d, e, tau, nu) = (g.delta.value::<f64>(), g.epsilon(), g.tau, g.nu);
        let cases: [([f64; 2], bool, [f64; 2]); 4] = [
            (t, true, scale2(jt, -2.0 * d * tau * nu)),
            (jt, true, scale2(jt, mu * nu)),
            (t, false, scale2(t, -2.0 * e * d * tau * nu)),
            (jt, false, scale2(t, e * mu * nu)),
        ];
        let mut r: f64 = 0.0;
        for (dir, of_t, want) in cases {
            let got = if of_t {
                covariant_derivative(patch, &gamma, u, v, dir, t_field)?
            } else {
                covariant_derivative(patch, &gamma, u, v, dir, jt_field)?
            };
            r = r.max(norm2(sub2(got, want)));
        }
        Ok(r)
    })
}

/// Range of `ν` over the grid.
pub fn nu_range(samples: &[LocalGeometry<f64>]) -> f64 {
    let (lo, hi) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), g| (l.min(g.nu), h.max(g.nu)));
    hi - lo
}

/// `max |T(μ) + μ²ν − 4δτ²ν³|` with `μ = S₂₂` in the adapted basis.
pub fn check_helix_ode(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let range = nu_range(&sample_grid(patch, grid)?);
    if !(range <= HELIX_NU_RANGE) {
        return Err(GeomError::NotAHelixPatch(range));
    }
    let pts = interior_points(patch, grid)?;
    let mu_field = |u: f64, v: f64| Ok([local_geometry(patch, u, v)?.shape_in(ShapeBasis::AdaptedTjt)?.m[1][1]]);
    max_over(&pts, |u, v| {
        let g = local_geometry(patch, u, v)?;
        let (t, _) = t_fields(&g);
        let mu = mu_field(u, v)?[0];
        let [tmu] = directional_derivative(patch, u, v, t, mu_field)?;
        let (d, tau, nu) = (g.delta.value::<f64>(), g.tau, g.nu);
        Ok((tmu + mu * mu * nu - 4.0 * d * tau * tau * nu.powi(3)).abs())
    })
}

/// `max |g(T,T) − (δ − εν²)|` and the normal part of `T`, over all samples.
pub fn angle_decomposition(samples: &[LocalGeometry<f64>]) -> f64 {
    max_of(samples.iter().map(|g| {
        let t = g.t_frame();
        let decomposition = (g.t_norm() - (g.delta.value::<f64>() - g.epsilon() * g.nu * g.nu)).abs();
        decomposition.max(g.dot(t, g.normal).abs())
    }))
}

/// Matrix of `S` in the adapted basis at every sample.
pub fn adapted_shapes(samples: &[LocalGeometry<f64>]) -> Result<Vec<M2<f64>>> {
    samples.iter().map(|g| Ok(g.shape_in(ShapeBasis::AdaptedTjt)?.m)).collect()
}

/// Gauss, Codazzi, structure equations, angle decomposition, adapted
/// connection, and the helix ODE when `ν` is constant.
pub fn check_surface(patch: &SurfacePatch<f64>, grid: &Grid, tols: &Tolerances) -> Result<ResidualSuite> {
    let mut suite = ResidualSuite::new("surface", 0);
    let samples = sample_grid(patch, grid)?;
    suite.record(tols, "angle_decomposition", angle_decomposition(&samples));
    suite.record(tols, "gauss", check_gauss(patch, grid)?);
    suite.record(tols, "codazzi", check_codazzi(patch, grid)?);
    suite.record(tols, "structure", check_structure(patch, grid)?);
    suite.record(tols, "adapted_connection", check_adapted_connection(patch, grid)?);
    if nu_range(&samples) <= HELIX_NU_RANGE {
        suite.record(tols, "helix_ode", check_helix_ode(patch, grid)?);
    }
    Ok(suite.finish())
}
