use serde::{Deserialize, Serialize};

use crate::ambient::{
    covariant_derivative_frame, frame_dot, from_frame, to_frame, wedge_frame, FrameIndex, Point,
    Sign, TangentVector,
};
use crate::error::{GeomError, Result};
use crate::linalg::{det2, inv2, mul2, trace2, M2, V3};
use crate::scalar::{lit, Real};

use super::{intrinsic, SurfacePatch};

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Induced metric in the `(∂u, ∂v)` basis with the causal character of the normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstFundamentalForm<T> {
    pub g: M2<T>,
    /// `+1` for timelike surfaces (spacelike normal), `−1` for spacelike ones.
    pub epsilon: Sign,
}

impl<T: Real> FirstFundamentalForm<T> {
    /// Classifies a symmetric 2×2 form; rejects it when an eigenvalue or the
    /// determinant is below `1e−10` in magnitude.
    pub fn classify(g: M2<T>, u: T, v: T) -> Result<Self> {
        let det = det2(&g);
        let half = lit::<T>(0.5);
        let mean = (g[0][0] + g[1][1]) * half;
        let dev = ((g[0][0] - g[1][1]) * half).hypot(g[0][1]);
        let small = (mean - dev).abs().min((mean + dev).abs());
        let tiny = lit::<T>(1e-10);
        if !(det.abs() >= tiny && small >= tiny) {
            return Err(GeomError::DegenerateInducedMetric { u: f64_of(u), v: f64_of(v), det: f64_of(det) });
        }
        let epsilon = if det < T::zero() { Sign::Plus } else { Sign::Minus };
        Ok(Self { g, epsilon })
    }

    pub fn det(&self) -> T {
        det2(&self.g)
    }

    pub fn inverse(&self) -> M2<T> {
        inv2(&self.g).expect("classified forms are invertible")
    }
}

/// Basis in which a shape operator matrix is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeBasis {
    /// `(∂u, ∂v)`.
    Coordinate,
    /// `(T, JT)`.
    AdaptedTjt,
}

/// Shape operator matrix; `m[k][i]` is the `k`-th component of `S` applied to
/// the `i`-th basis vector, so `S₁₂ = m[0][1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeOperator2x2<T> {
    pub m: M2<T>,
    pub basis: ShapeBasis,
}

impl<T: Real> ShapeOperator2x2<T> {
    pub fn trace(&self) -> T {
        trace2(&self.m)
    }

    pub fn det(&self) -> T {
        det2(&self.m)
    }
}

/// Everything computable from the 2-jet at one sample.
///
/// Vectors are stored as frame components; tangent vectors can be converted
/// to `(∂u, ∂v)` coefficients with [`LocalGeometry::coefficients`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalGeometry<T> {
    pub u: T,
    pub v: T,
    pub point: Point<T>,
    pub delta: Sign,
    pub tau: T,
    /// Frame components of `∂u F` and `∂v F`.
    pub tangents: [V3<T>; 2],
    pub first: FirstFundamentalForm<T>,
    /// Oriented unit normal, frame components.
    pub normal: V3<T>,
    pub nu: T,
    /// `L_ij = g(∇̃_{∂i}∂j, N)`.
    pub second: M2<T>,
    /// Shape operator in the coordinate basis.
    pub shape: M2<T>,
}

impl<T: Real> LocalGeometry<T> {
    pub fn epsilon(&self) -> T {
        self.first.epsilon.value()
    }

    pub fn dot(&self, a: V3<T>, b: V3<T>) -> T {
        frame_dot::<T, T>(self.delta, a, b)
    }

    /// `(∂u, ∂v)` coefficients of the tangential part of `w`.
    pub fn coefficients(&self, w: V3<T>) -> [T; 2] {
        let r = [self.dot(w, self.tangents[0]), self.dot(w, self.tangents[1])];
        crate::linalg::apply2(&self.first.inverse(), r)
    }

    /// Frame components of `a₀∂u + a₁∂v`.
    pub fn vector(&self, a: [T; 2]) -> V3<T> {
        self.tangents[0] * a[0] + self.tangents[1] * a[1]
    }

    /// `T = E₃ − νN`.
    pub fn t_frame(&self) -> V3<T> {
        FrameIndex::E3.unit::<T>() - self.normal * self.nu
    }

    /// `JX = N ∧ X`.
    pub fn rotate(&self, x: V3<T>) -> V3<T> {
        wedge_frame::<T, T>(self.delta, self.normal, x)
    }

    /// `g(T,T)`.
    pub fn t_norm(&self) -> T {
        let t = self.t_frame();
        self.dot(t, t)
    }

    /// Columns are the `(∂u, ∂v)` coefficients of `T` and `JT`.
    pub fn adapted_basis(&self) -> Result<M2<T>> {
        let gtt = self.t_norm();
        if !(gtt.abs() >= lit::<T>(1e-8)) {
            return Err(GeomError::DegenerateAdaptedFrame { u: f64_of(self.u), v: f64_of(self.v), gtt: f64_of(gtt) });
        }
        let t = self.t_frame();
        let a = self.coefficients(t);
        let b = self.coefficients(self.rotate(t));
        Ok([[a[0], b[0]], [a[1], b[1]]])
    }

    pub fn shape_in(&self, basis: ShapeBasis) -> Result<ShapeOperator2x2<T>> {
        let m = match basis {
            ShapeBasis::Coordinate => self.shape,
            ShapeBasis::AdaptedTjt => {
                let p = self.adapted_basis()?;
                let pinv = inv2(&p).ok_or(GeomError::DegenerateAdaptedFrame {
                    u: f64_of(self.u),
                    v: f64_of(self.v),
                    gtt: f64_of(self.t_norm()),
                })?;
                mul2(&pinv, &mul2(&self.shape, &p))
            }
        };
        Ok(ShapeOperator2x2 { m, basis })
    }

    pub fn mean_curvature(&self) -> T {
        trace2(&self.shape) * lit::<T>(0.5)
    }

    /// `K = −τ² + ε(det S + 4δν²τ²)`.
    pub fn gaussian_curvature_ext(&self) -> T {
        let t2 = self.tau * self.tau;
        let d: T = self.delta.value();
        -t2 + self.epsilon() * (det2(&self.shape) + lit::<T>(4.0) * d * self.nu * self.nu * t2)
    }

    /// Coordinate components of a vector given in frame components.
    pub fn coords(&self, a: V3<T>) -> V3<T> {
        from_frame(self.tau, self.point.x, self.point.y, a)
    }

    fn tangent(&self, a: V3<T>) -> TangentVector<T> {
        TangentVector::new(self.point, self.coords(a))
    }
}

/// Pointwise geometry from the 2-jet.
pub fn local_geometry<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<LocalGeometry<T>> {
    let jet = patch.jet(u, v)?;
    let prm = patch.params();
    let (tau, delta) = (prm.tau, prm.delta);
    let (x, y) = (jet.position[0], jet.position[1]);
    let c = [to_frame(tau, x, y, jet.first[0]), to_frame(tau, x, y, jet.first[1])];
    let dot = |a: V3<T>, b: V3<T>| frame_dot::<T, T>(delta, a, b);
    let g01 = dot(c[0], c[1]);
    let first = FirstFundamentalForm::classify([[dot(c[0], c[0]), g01], [g01, dot(c[1], c[1])]], u, v)?;

    let n = wedge_frame::<T, T>(delta, c[0], c[1]);
    let n = n * (patch.orientation().value::<T>() / dot(n, n).abs().sqrt());
    let eps: T = first.epsilon.value();
    let nu = eps * dot(n, FrameIndex::E3.unit());

    let mut second = [[T::zero(); 2]; 2];
    for (i, row) in second.iter_mut().enumerate() {
        for (j, lij) in row.iter_mut().enumerate() {
            let (w, fi, fj) = (jet.second[i][j], jet.first[i], jet.first[j]);
            // ∂i of the frame components of ∂j F
            let dc = V3([
                w[0],
                w[1],
                w[2] + tau * (y * w[0] - x * w[1]) + tau * (fi[1] * fj[0] - fi[0] * fj[1]),
            ]);
            *lij = dot(covariant_derivative_frame(prm, c[i], c[j], dc), n);
        }
    }
    let shape = mul2(&first.inverse(), &second);
    Ok(LocalGeometry {
        u,
        v,
        point: Point::new(x, y, jet.position[2]),
        delta,
        tau,
        tangents: c,
        first,
        normal: n,
        nu,
        second,
        shape,
    })
}

pub fn induced_metric<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<FirstFundamentalForm<T>> {
    Ok(local_geometry(patch, u, v)?.first)
}

/// Oriented unit normal in coordinate components.
pub fn unit_normal<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<TangentVector<T>> {
    let g = local_geometry(patch, u, v)?;
    Ok(g.tangent(g.normal))
}

/// `ν = ε g(N, E₃)`.
pub fn angle_function<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<T> {
    Ok(local_geometry(patch, u, v)?.nu)
}

/// `T = E₃ − νN` in coordinate components.
pub fn tangent_part_t<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<TangentVector<T>> {
    let g = local_geometry(patch, u, v)?;
    Ok(g.tangent(g.t_frame()))
}

/// `JX = N ∧ X` for a tangent vector `X` given in coordinate components.
pub fn tangent_rotation_j<T: Real>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    x: &TangentVector<T>,
) -> Result<TangentVector<T>> {
    let g = local_geometry(patch, u, v)?;
    if x.base != g.point {
        return Err(GeomError::BaseMismatch);
    }
    let xf = to_frame(g.tau, g.point.x, g.point.y, x.components);
    Ok(g.tangent(g.rotate(xf)))
}

pub fn shape_operator<T: Real>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    basis: ShapeBasis,
) -> Result<ShapeOperator2x2<T>> {
    local_geometry(patch, u, v)?.shape_in(basis)
}

pub fn mean_curvature<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<T> {
    Ok(local_geometry(patch, u, v)?.mean_curvature())
}

/// How to compute the Gaussian curvature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurvatureMethod {
    /// Gauss equation from the shape operator and the ambient curvature.
    Extrinsic,
    /// Curvature of the induced metric alone (finite differences of its coefficients).
    Intrinsic,
}

pub fn gaussian_curvature<T: Real>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    method: CurvatureMethod,
) -> Result<T> {
    match method {
        CurvatureMethod::Extrinsic => Ok(local_geometry(patch, u, v)?.gaussian_curvature_ext()),
        CurvatureMethod::Intrinsic => intrinsic::gaussian_curvature_intrinsic(patch, u, v),
    }
}
