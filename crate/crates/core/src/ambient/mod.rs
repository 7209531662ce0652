//! Ambient geometry of the Lorentzian spaces `M³₁(κ, τ)` and, for `κ = 0`,
//! of the Lorentzian Heisenberg group `H₃(τ)`.
//!
//! The metric in global coordinates `(x, y, z)` is
//!
//! ```text
//! g = (dx² − δ dy²) / D² + δ (dz + τ (y dx − x dy) / D)²,   D = 1 + κ/4 (x² − δ y²).
//! ```
//!
//! For `κ = 0` the left-invariant frame
//! `E₁ = ∂x − τy ∂z`, `E₂ = ∂y + τx ∂z`, `E₃ = ∂z` is pseudo-orthonormal with
//! `g(E₁,E₁) = 1`, `g(E₂,E₂) = −δ`, `g(E₃,E₃) = δ`, and `[E₁,E₂] = 2τE₃`.
//! Everything in this module that works in frame components assumes that frame.
//!
//! Two independent routes are provided: closed-form frame tables here, and
//! finite differences of the coordinate metric in [`coords`].

pub mod coords;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{V3, M3};
use crate::scalar::{lit, Real, Scalar};

pub use coords::{
    bracket_numeric, christoffel_coords, connection_numeric, covariant_derivative_numeric,
    curvature_numeric, riemann_coords, sectional_curvature_numeric, Christoffel, Riemann,
};

/// A sign, used for `δ` and for the causal character `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Minus => -T::one(),
            Sign::Plus => T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// Sign of a nonzero real (zero maps to `Plus`).
    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

/// Parameters `(δ, τ, κ)` of the ambient metric.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams<T> {
    pub delta: Sign,
    pub tau: T,
    #[serde(default)]
    pub kappa: T,
}

impl<T: Real> SpaceParams<T> {
    /// Heisenberg group `H₃(τ)` (κ = 0).
    pub fn heisenberg(delta: Sign, tau: T) -> Self {
        Self { delta, tau, kappa: T::zero() }
    }

    pub fn with_kappa(delta: Sign, tau: T, kappa: T) -> Self {
        Self { delta, tau, kappa }
    }

    pub fn delta(&self) -> T {
        self.delta.value()
    }

    pub fn require_heisenberg(&self) -> Result<()> {
        if self.kappa != T::zero() {
            return Err(GeomError::UnsupportedKappa(self.kappa.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(())
    }

    pub fn require_nonzero_tau(&self) -> Result<()> {
        if self.tau == T::zero() {
            return Err(GeomError::ZeroTau);
        }
        Ok(())
    }

    /// Diagonal of the metric in the frame: `(1, −δ, δ)`.
    pub fn frame_metric(&self) -> [T; 3] {
        let d = self.delta();
        [T::one(), -d, d]
    }
}

/// A point of `ℝ³` in global coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn coords(&self) -> V3<T> {
        V3([self.x, self.y, self.z])
    }

    pub fn from_coords(c: V3<T>) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn is_finite(&self) -> bool {
        self.coords().is_finite()
    }
}

/// A tangent vector in the coordinate basis `(∂x, ∂y, ∂z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector<T> {
    pub base: Point<T>,
    pub components: V3<T>,
}

impl<T: Real> TangentVector<T> {
    pub fn new(base: Point<T>, components: V3<T>) -> Self {
        Self { base, components }
    }

    pub fn zero(base: Point<T>) -> Self {
        Self::new(base, V3::zero())
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(GeomError::BaseMismatch);
        }
        Ok(())
    }
}

/// The frame `E₁, E₂, E₃` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame<T> {
    pub e1: TangentVector<T>,
    pub e2: TangentVector<T>,
    pub e3: TangentVector<T>,
}

impl<T: Real> Frame<T> {
    pub fn get(&self, i: FrameIndex) -> TangentVector<T> {
        match i {
            FrameIndex::E1 => self.e1,
            FrameIndex::E2 => self.e2,
            FrameIndex::E3 => self.e3,
        }
    }
}

/// Index into the frame, in the order `E₁, E₂, E₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameIndex {
    E1,
    E2,
    E3,
}

impl FrameIndex {
    pub const ALL: [FrameIndex; 3] = [FrameIndex::E1, FrameIndex::E2, FrameIndex::E3];

    pub fn index(self) -> usize {
        match self {
            FrameIndex::E1 => 0,
            FrameIndex::E2 => 1,
            FrameIndex::E3 => 2,
        }
    }

    pub fn unit<T: Real>(self) -> V3<T> {
        let mut c = [T::zero(); 3];
        c[self.index()] = T::one();
        V3(c)
    }
}

/// `1 + κ/4 (x² − δy²)`.
pub fn conformal_factor<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<T> {
    let d = T::one() + params.kappa / lit(4.0) * (p.x * p.x - params.delta() * p.y * p.y);
    if d.abs() < lit(1e-12) {
        return Err(GeomError::SingularConformalFactor {
            x: p.x.to_f64().unwrap_or(f64::NAN),
            y: p.y.to_f64().unwrap_or(f64::NAN),
            value: d.abs().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(d)
}

/// Matrix of the metric in the coordinate basis.
pub fn coordinate_metric<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<M3<T>> {
    let d = conformal_factor(params, p)?;
    let delta = params.delta();
    let theta = [params.tau * p.y / d, -params.tau * p.x / d, T::one()];
    let base = [T::one() / (d * d), -delta / (d * d), T::zero()];
    let mut g = [[T::zero(); 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, gij) in row.iter_mut().enumerate() {
            *gij = delta * theta[i] * theta[j];
        }
        row[i] = row[i] + base[i];
    }
    Ok(g)
}

/// `g(v, w)` for tangent vectors based at `p`.
pub fn metric_eval<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    v: &TangentVector<T>,
    w: &TangentVector<T>,
) -> Result<T> {
    if v.base != *p || w.base != *p {
        return Err(GeomError::BaseMismatch);
    }
    let g = coordinate_metric(params, p)?;
    let (a, b) = (v.components, w.components);
    let mut s = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            s = s + g[i][j] * a[i] * b[j];
        }
    }
    Ok(s)
}

/// Frame components of a coordinate vector at a point with coordinates `(x, y)`.
pub fn to_frame<T: Real, S: Scalar<T>>(tau: T, x: S, y: S, w: V3<S>) -> V3<S> {
    V3([w[0], w[1], w[2] + (y * w[0] - x * w[1]) * tau])
}

/// Coordinate components of a vector given in frame components.
pub fn from_frame<T: Real, S: Scalar<T>>(tau: T, x: S, y: S, a: V3<S>) -> V3<S> {
    V3([a[0], a[1], a[2] - (y * a[0] - x * a[1]) * tau])
}

/// Metric pairing of frame components, `a₁b₁ − δa₂b₂ + δa₃b₃`.
pub fn frame_dot<T: Real, S: Scalar<T>>(delta: Sign, a: V3<S>, b: V3<S>) -> S {
    let d: T = delta.value();
    a[0] * b[0] + (a[2] * b[2] - a[1] * b[1]) * d
}

/// Wedge product in frame components.
///
/// This is the trilinear extension of `E₁∧E₂ = δE₃`, `E₂∧E₃ = E₁`,
/// `E₁∧E₃ = δE₂`; equivalently `g(X∧Y, Z) = det(X, Y, Z)`.
pub fn wedge_frame<T: Real, S: Scalar<T>>(delta: Sign, a: V3<S>, b: V3<S>) -> V3<S> {
    let d: T = delta.value();
    a.cross(b).scale_each([T::one(), -d, d])
}

/// The frame `E₁, E₂, E₃` at `p` (κ = 0 only).
pub fn frame_at<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<Frame<T>> {
    params.require_heisenberg()?;
    let t = params.tau;
    Ok(Frame {
        e1: TangentVector::new(*p, V3([T::one(), T::zero(), -t * p.y])),
        e2: TangentVector::new(*p, V3([T::zero(), T::one(), t * p.x])),
        e3: TangentVector::new(*p, V3([T::zero(), T::zero(), T::one()])),
    })
}

/// Frame components of a tangent vector (κ = 0 only).
pub fn frame_components<T: Real>(params: &SpaceParams<T>, v: &TangentVector<T>) -> Result<V3<T>> {
    params.require_heisenberg()?;
    Ok(to_frame(params.tau, v.base.x, v.base.y, v.components))
}

/// Builds a tangent vector from frame components (κ = 0 only).
pub fn from_frame_components<T: Real>(
    params: &SpaceParams<T>,
    base: Point<T>,
    a: V3<T>,
) -> Result<TangentVector<T>> {
    params.require_heisenberg()?;
    Ok(TangentVector::new(base, from_frame(params.tau, base.x, base.y, a)))
}

/// `v ∧ w` (κ = 0 only).
pub fn wedge<T: Real>(
    params: &SpaceParams<T>,
    v: &TangentVector<T>,
    w: &TangentVector<T>,
) -> Result<TangentVector<T>> {
    v.same_base(w)?;
    let a = frame_components(params, v)?;
    let b = frame_components(params, w)?;
    from_frame_components(params, v.base, wedge_frame(params.delta, a, b))
}

/// Frame components of `∇_{E_i} E_j` from the Levi-Civita table.
pub fn connection_frame<T: Real>(params: &SpaceParams<T>, i: FrameIndex, j: FrameIndex) -> V3<T> {
    use FrameIndex::*;
    let t = params.tau;
    let z = T::zero();
    match (i, j) {
        (E1, E1) | (E2, E2) | (E3, E3) => V3([z, z, z]),
        (E2, E1) => V3([z, z, -t]),
        (E1, E2) => V3([z, z, t]),
        (E3, E1) | (E1, E3) => V3([z, t, z]),
        (E3, E2) | (E2, E3) => V3([params.delta() * t, z, z]),
    }
}

/// `∇_X Y` in frame components, given `Y`'s components along the curve and
/// their derivative `dY` in the direction `X`.
pub fn covariant_derivative_frame<T: Real, S: Scalar<T>>(
    params: &SpaceParams<T>,
    x: V3<S>,
    y: V3<S>,
    dy: V3<S>,
) -> V3<S> {
    let mut out = dy;
    for i in FrameIndex::ALL {
        for j in FrameIndex::ALL {
            let g = connection_frame(params, i, j);
            if g.max_abs() == T::zero() {
                continue;
            }
            let w = x[i.index()] * y[j.index()];
            out = out + V3([w * g[0], w * g[1], w * g[2]]);
        }
    }
    out
}

/// Riemann tensor `R(X,Y)Z` in frame components from the tensorial formula
///
/// ```text
/// R(X,Y)Z = 3τ²[g(Y,Z)X − g(X,Z)Y]
///         − 4δτ²[g(Y,E₃)g(Z,E₃)X − g(X,E₃)g(Z,E₃)Y + g(X,E₃)g(Y,Z)E₃ − g(Y,E₃)g(X,Z)E₃].
/// ```
pub fn curvature_frame<T: Real>(params: &SpaceParams<T>, x: V3<T>, y: V3<T>, z: V3<T>) -> V3<T> {
    let d = params.delta;
    let t2 = params.tau * params.tau;
    let e3 = FrameIndex::E3.unit::<T>();
    let g = |a: V3<T>, b: V3<T>| frame_dot::<T, T>(d, a, b);
    let (gyz, gxz) = (g(y, z), g(x, z));
    let (gxe, gye, gze) = (g(x, e3), g(y, e3), g(z, e3));
    let first = (x * gyz - y * gxz) * (lit::<T>(3.0) * t2);
    let second = (x * (gye * gze) - y * (gxe * gze) + e3 * (gxe * gyz - gye * gxz))
        * (lit::<T>(4.0) * params.delta() * t2);
    first - second
}

/// `R(X,Y)Z` for coordinate tangent vectors (κ = 0 only).
pub fn curvature<T: Real>(
    params: &SpaceParams<T>,
    x: &TangentVector<T>,
    y: &TangentVector<T>,
    z: &TangentVector<T>,
) -> Result<TangentVector<T>> {
    x.same_base(y)?;
    x.same_base(z)?;
    let r = curvature_frame(
        params,
        frame_components(params, x)?,
        frame_components(params, y)?,
        frame_components(params, z)?,
    );
    from_frame_components(params, x.base, r)
}

/// The frame curvature table `R(E_i,E_j)E_k`, built from its three listed
/// entries `R(E₁,E₂)E₁ = −3τ²E₂`, `R(E₁,E₃)E₁ = τ²E₃`, `R(E₂,E₃)E₂ = −δτ²E₃`
/// and the symmetries of the curvature tensor.
pub fn curvature_table<T: Real>(
    params: &SpaceParams<T>,
    i: FrameIndex,
    j: FrameIndex,
    k: FrameIndex,
) -> V3<T> {
    use FrameIndex::*;
    let (a, b, c) = (i.index(), j.index(), k.index());
    if a == b || (c != a && c != b) {
        return V3::zero();
    }
    if a > b {
        return -curvature_table(params, j, i, k);
    }
    let t2 = params.tau * params.tau;
    // R(E_i,E_j)E_i for i < j.
    let listed = match (i, j) {
        (E1, E2) => E2.unit::<T>() * (lit::<T>(-3.0) * t2),
        (E1, E3) => E3.unit::<T>() * t2,
        _ => E3.unit::<T>() * (-params.delta() * t2),
    };
    if c == a {
        return listed;
    }
    // R(E_i,E_j)E_j = −g(R(E_i,E_j)E_i, E_j) / g(E_i,E_i) · E_i
    let eta = params.frame_metric();
    let lambda = -frame_dot::<T, T>(params.delta, listed, j.unit()) / eta[a];
    i.unit::<T>() * lambda
}

fn plane_norm<T: Real>(params: &SpaceParams<T>, x: V3<T>, y: V3<T>, scale: T) -> Result<T> {
    let g = |a: V3<T>, b: V3<T>| frame_dot::<T, T>(params.delta, a, b);
    let q = g(x, x) * g(y, y) - g(x, y) * g(x, y);
    if !(q.abs() > lit::<T>(1e-10) * scale) {
        return Err(GeomError::DegeneratePlane(q.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(q)
}

/// Sectional curvature `g(R(X,Y)Y, X) / (g(X,X)g(Y,Y) − g(X,Y)²)`.
///
/// Uses the closed-form tensor when κ = 0 and the finite-difference coordinate
/// route otherwise.
pub fn sectional_curvature<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    x: &TangentVector<T>,
    y: &TangentVector<T>,
) -> Result<T> {
    if x.base != *p || y.base != *p {
        return Err(GeomError::BaseMismatch);
    }
    if params.kappa != T::zero() {
        return sectional_curvature_numeric(params, p, x, y);
    }
    let a = frame_components(params, x)?;
    let b = frame_components(params, y)?;
    let scale = a.dot(a) * b.dot(b);
    let q = plane_norm(params, a, b, scale)?;
    let r = curvature_frame(params, a, b, b);
    Ok(frame_dot::<T, T>(params.delta, r, a) / q)
}
