//! Intrinsic quantities of the induced metric, from finite differences of its
//! coefficients `(E, F, G)`.

use crate::ambient::{frame_dot, to_frame};
use crate::error::Result;
use crate::fd::{d1, d2, directional};
use crate::linalg::{det3, inv2, M2};
use crate::scalar::{lit, Real};

use super::SurfacePatch;

/// `gamma[k][i][j] = Γᵏᵢⱼ` of the induced metric, indices over `(u, v)`.
pub type Christoffel2<T> = [[[T; 2]; 2]; 2];

/// Coefficients `(E, F, G)` and their derivatives up to second order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricJet<T> {
    pub g: [T; 3],
    pub du: [T; 3],
    pub dv: [T; 3],
    pub duu: [T; 3],
    pub duv: [T; 3],
    pub dvv: [T; 3],
}

/// `(E, F, G)` at `(u, v)`.
pub fn metric_coefficients<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<[T; 3]> {
    let j = patch.jet(u, v)?;
    let prm = patch.params();
    let (x, y) = (j.position[0], j.position[1]);
    let cu = to_frame(prm.tau, x, y, j.first[0]);
    let cv = to_frame(prm.tau, x, y, j.first[1]);
    let g = |a, b| frame_dot::<T, T>(prm.delta, a, b);
    Ok([g(cu, cu), g(cu, cv), g(cv, cv)])
}

fn as_matrix<T: Real>(c: [T; 3]) -> M2<T> {
    [[c[0], c[1]], [c[1], c[2]]]
}

/// First derivatives `(∂u, ∂v)` of `(E, F, G)`.
pub fn metric_gradient<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<[[T; 3]; 2]> {
    let h = patch.step();
    let du = d1(|t| metric_coefficients(patch, u + t, v), T::zero(), h)?;
    let dv = d1(|t| metric_coefficients(patch, u, v + t), T::zero(), h)?;
    Ok([du, dv])
}

pub fn metric_jet<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<MetricJet<T>> {
    let h = patch.step();
    let f = |a: T, b: T| metric_coefficients(patch, a, b);
    let [du, dv] = metric_gradient(patch, u, v)?;
    Ok(MetricJet {
        g: f(u, v)?,
        du,
        dv,
        duu: d2(|t| f(u + t, v), T::zero(), h)?,
        duv: d1(|s| d1(|t| f(u + s, v + t), T::zero(), h), T::zero(), h)?,
        dvv: d2(|t| f(u, v + t), T::zero(), h)?,
    })
}

/// Christoffel symbols from a metric and its gradient (`dg[a]` is `∂a g`).
pub fn christoffel_from<T: Real>(g: [T; 3], dg: [[T; 3]; 2]) -> Option<Christoffel2<T>> {
    let ginv = inv2(&as_matrix(g))?;
    let d = [as_matrix(dg[0]), as_matrix(dg[1])];
    let half = lit::<T>(0.5);
    let mut gamma = [[[T::zero(); 2]; 2]; 2];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut s = T::zero();
                for l in 0..2 {
                    s = s + ginv[k][l] * (d[i][l][j] + d[j][l][i] - d[l][i][j]);
                }
                gk[i][j] = half * s;
            }
        }
    }
    Some(gamma)
}

/// Christoffel symbols of the induced metric at `(u, v)`.
pub fn induced_christoffel<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<Christoffel2<T>> {
    let g = metric_coefficients(patch, u, v)?;
    let dg = metric_gradient(patch, u, v)?;
    christoffel_from(g, dg).ok_or(crate::error::GeomError::DegenerateInducedMetric {
        u: u.to_f64().unwrap_or(f64::NAN),
        v: v.to_f64().unwrap_or(f64::NAN),
        det: (g[0] * g[2] - g[1] * g[1]).to_f64().unwrap_or(f64::NAN),
    })
}

/// `∇_X Y` in `(∂u, ∂v)` coefficients, where `X = dir` and `Y` is a tangent
/// field given by its coefficients.
pub fn covariant_derivative<T: Real, F>(
    patch: &SurfacePatch<T>,
    gamma: &Christoffel2<T>,
    u: T,
    v: T,
    dir: [T; 2],
    field: F,
) -> Result<[T; 2]>
where
    F: Fn(T, T) -> Result<[T; 2]>,
{
    let y = field(u, v)?;
    let dy = directional_derivative(patch, u, v, dir, &field)?;
    Ok(std::array::from_fn(|k| {
        let mut s = dy[k];
        for i in 0..2 {
            for j in 0..2 {
                s = s + gamma[k][i][j] * dir[i] * y[j];
            }
        }
        s
    }))
}

/// Derivative of a field along `dir`, with a stencil that never reaches
/// further than twice the patch step in either parameter.
pub fn directional_derivative<T: Real, const N: usize, F>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    dir: [T; 2],
    field: F,
) -> Result<[T; N]>
where
    F: Fn(T, T) -> Result<[T; N]>,
{
    let scale = T::one().max(dir[0].abs()).max(dir[1].abs());
    directional(field, u, v, dir, patch.step() / scale)
}

/// Curvature of a nondegenerate 2-metric from Brioschi's formula. The formula
/// is algebraic in the coefficients, so it holds for either signature.
pub fn brioschi<T: Real>(m: &MetricJet<T>) -> T {
    let half = lit::<T>(0.5);
    let [e, f, g] = m.g;
    let (eu, fu, gu) = (m.du[0], m.du[1], m.du[2]);
    let (ev, fv, gv) = (m.dv[0], m.dv[1], m.dv[2]);
    let a = [
        [-half * m.dvv[0] + m.duv[1] - half * m.duu[2], half * eu, fu - half * ev],
        [fv - half * gu, e, f],
        [half * gv, f, g],
    ];
    let b = [[T::zero(), half * ev, half * gu], [half * ev, e, f], [half * gu, f, g]];
    let det = e * g - f * f;
    (det3(&a) - det3(&b)) / (det * det)
}

pub fn gaussian_curvature_intrinsic<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<T> {
    Ok(brioschi(&metric_jet(patch, u, v)?))
}
