//! The parallel-surface criterion in a pseudo-orthonormal tangent frame
//! `{Ē₁, Ē₂}` with `g(Ē₁,Ē₁) = 1`, `g(Ē₂,Ē₂) = −ε`:
//!
//! ```text
//! X(S₁₁) + 2εS₁₂ω = 0,   X(S₁₂) − (S₂₂ − S₁₁)ω = 0,   X(S₂₂) − 2εS₁₂ω = 0
//! ```
//!
//! for `X ∈ {Ē₁, Ē₂}`, where `ω = g(∇_X Ē₁, Ē₂)` and `Sᵢⱼ` is the `i`-th
//! component of `S Ēⱼ`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{apply2, inv2, mul2, M2};
use crate::surface::intrinsic::{covariant_derivative, directional_derivative, induced_christoffel};
use crate::surface::{local_geometry, Grid, LocalGeometry, SurfacePatch};

use super::surface::{interior_points, max_over};

/// Normalization tolerance of the frame.
pub const FRAME_TOL: f64 = 1e-10;

/// Pointwise data of the criterion. Vectors are `(∂u, ∂v)` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelCheckInput {
    /// `[Ē₁, Ē₂]`.
    pub frame: [[f64; 2]; 2],
    /// First fundamental form in `(∂u, ∂v)`.
    pub metric: M2<f64>,
    pub epsilon: f64,
    /// `S` in the frame.
    pub s: M2<f64>,
    /// `ds[x]` is the derivative of the frame matrix of `S` along `Ē_x`.
    pub ds: [M2<f64>; 2],
    /// `ω(Ē_x) = g(∇_{Ē_x} Ē₁, Ē₂)`.
    pub omega: [f64; 2],
}

fn g(m: &M2<f64>, a: [f64; 2], b: [f64; 2]) -> f64 {
    let mb = apply2(m, b);
    a[0] * mb[0] + a[1] * mb[1]
}

/// The six residuals `[eq₁, eq₂, eq₃]` for `X = Ē₁` then `X = Ē₂`.
pub fn parallel_residuals(input: &ParallelCheckInput) -> Result<[f64; 6]> {
    let [e1, e2] = input.frame;
    let m = &input.metric;
    let bad = (g(m, e1, e1) - 1.0).abs() > FRAME_TOL
        || (g(m, e2, e2) + input.epsilon).abs() > FRAME_TOL
        || g(m, e1, e2).abs() > FRAME_TOL;
    if bad {
        return Err(GeomError::DegenerateFrame { u: f64::NAN, v: f64::NAN });
    }
    let s = &input.s;
    let (s11, s12, s22) = (s[0][0], s[0][1], s[1][1]);
    let e = input.epsilon;
    let mut out = [0.0; 6];
    for x in 0..2 {
        let (d, w) = (&input.ds[x], input.omega[x]);
        out[3 * x] = d[0][0] + 2.0 * e * s12 * w;
        out[3 * x + 1] = d[0][1] - (s22 - s11) * w;
        out[3 * x + 2] = d[1][1] - 2.0 * e * s12 * w;
    }
    Ok(out)
}

/// The criterion's frame at a sample. On spacelike surfaces `Ē₁ = ∂u/|∂u|`; on
/// timelike ones `Ē₁` is the unit eigenvector of the first fundamental form
/// for its positive eigenvalue, signed to agree with `reference`. `Ē₂` is the
/// `g`-orthogonal direction, normalized and oriented so that `(Ē₁, Ē₂)` is
/// positively oriented in the parameter plane.
pub fn parallel_frame(geo: &LocalGeometry<f64>, reference: Option<[f64; 2]>) -> Result<[[f64; 2]; 2]> {
    let m = geo.first.g;
    let fail = || GeomError::DegenerateFrame { u: geo.u, v: geo.v };
    let mut e1 = if geo.epsilon() < 0.0 {
        [1.0, 0.0]
    } else {
        let (a, b, c) = (m[0][0], m[0][1], m[1][1]);
        let lambda = 0.5 * (a + c) + (0.25 * (a - c) * (a - c) + b * b).sqrt();
        // (M − λ)x = 0; pick the better-conditioned row
        if (a - lambda).abs() + b.abs() >= b.abs() + (c - lambda).abs() {
            [-b, a - lambda]
        } else {
            [c - lambda, -b]
        }
    };
    let n1 = g(&m, e1, e1);
    if !(n1 > 0.0) {
        return Err(fail());
    }
    e1 = [e1[0] / n1.sqrt(), e1[1] / n1.sqrt()];
    if let Some(r) = reference {
        if e1[0] * r[0] + e1[1] * r[1] < 0.0 {
            e1 = [-e1[0], -e1[1]];
        }
    }
    let me1 = apply2(&m, e1);
    let mut e2 = [-me1[1], me1[0]];
    let n2 = g(&m, e2, e2);
    if !(n2 * geo.epsilon() < 0.0) {
        return Err(fail());
    }
    let k = n2.abs().sqrt();
    e2 = [e2[0] / k, e2[1] / k];
    if e1[0] * e2[1] - e1[1] * e2[0] < 0.0 {
        e2 = [-e2[0], -e2[1]];
    }
    Ok([e1, e2])
}

/// Columns `Ē₁, Ē₂`.
fn as_columns(f: [[f64; 2]; 2]) -> M2<f64> {
    [[f[0][0], f[1][0]], [f[0][1], f[1][1]]]
}

/// Builds the criterion's input at `(u, v)` from a patch.
pub fn parallel_input(patch: &SurfacePatch<f64>, u: f64, v: f64, reference: Option<[f64; 2]>) -> Result<ParallelCheckInput> {
    let frame_at = |a: f64, b: f64| -> Result<(LocalGeometry<f64>, [[f64; 2]; 2])> {
        let geo = local_geometry(patch, a, b)?;
        let f = parallel_frame(&geo, reference)?;
        Ok((geo, f))
    };
    let s_frame = |a: f64, b: f64| -> Result<[f64; 4]> {
        let (geo, f) = frame_at(a, b)?;
        let q = as_columns(f);
        let qi = inv2(&q).ok_or(GeomError::DegenerateFrame { u: a, v: b })?;
        let s = mul2(&qi, &mul2(&geo.shape, &q));
        Ok([s[0][0], s[0][1], s[1][0], s[1][1]])
    };
    let (geo, frame) = frame_at(u, v)?;
    let gamma = induced_christoffel(patch, u, v)?;
    let s = s_frame(u, v)?;
    let e1_field = |a: f64, b: f64| Ok(frame_at(a, b)?.1[0]);
    let metric = geo.first.g;
    let mut ds = [[[0.0; 2]; 2]; 2];
    let mut omega = [0.0; 2];
    for x in 0..2 {
        let d = directional_derivative(patch, u, v, frame[x], s_frame)?;
        ds[x] = [[d[0], d[1]], [d[2], d[3]]];
        let de1 = covariant_derivative(patch, &gamma, u, v, frame[x], e1_field)?;
        omega[x] = g(&metric, de1, frame[1]);
    }
    Ok(ParallelCheckInput {
        frame,
        metric,
        epsilon: geo.epsilon(),
        s: [[s[0], s[1]], [s[2], s[3]]],
        ds,
        omega,
    })
}

/// Largest residual of the criterion over interior samples.
pub fn check_parallel(patch: &SurfacePatch<f64>, grid: &Grid) -> Result<f64> {
    let pts = interior_points(patch, grid)?;
    let (uc, vc) = patch.domain().center();
    let reference = parallel_frame(&local_geometry(patch, uc, vc)?, None)?[0];
    max_over(&pts, |u, v| {
        let r = parallel_residuals(&parallel_input(patch, u, v, Some(reference))?)?;
        Ok(r.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn umbilical_synthetic_input_passes() {
        let input = ParallelCheckInput {
            frame: [[1.0, 0.0], [0.0, 1.0]],
            metric: [[1.0, 0.0], [0.0, 1.0]],
            epsilon: -1.0,
            s: [[0.7, 0.0], [0.0, 0.7]],
            ds: [[[0.0; 2]; 2]; 2],
            omega: [0.0; 2],
        };
        assert_eq!(parallel_residuals(&input).unwrap(), [0.0; 6]);
        let bad = ParallelCheckInput { epsilon: 1.0, ..input };
        assert!(matches!(parallel_residuals(&bad), Err(GeomError::DegenerateFrame { .. })));
    }
}
