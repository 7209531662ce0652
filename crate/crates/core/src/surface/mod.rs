//! Immersed surface patches and their extrinsic and intrinsic geometry.

mod geometry;
pub mod intrinsic;
pub mod report;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ambient::{frame_dot, to_frame, wedge_frame, Sign, SpaceParams};
use crate::error::{GeomError, Result};
use crate::fd::{d1, d2, SURFACE_STEP};
use crate::linalg::V3;
use crate::scalar::{lit, Jet2, Real, Scalar};

pub use geometry::{
    angle_function, gaussian_curvature, induced_metric, local_geometry, mean_curvature,
    shape_operator, tangent_part_t, tangent_rotation_j, unit_normal, CurvatureMethod,
    FirstFundamentalForm, LocalGeometry, ShapeBasis, ShapeOperator2x2,
};
pub use report::{analyze_grid, GeometryReport, GridSummary, SampleRecord, Stats};

/// Parameter rectangle `[u₀,u₁] × [v₀,v₁]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain<T> {
    pub u: [T; 2],
    pub v: [T; 2],
}

impl<T: Real> Domain<T> {
    pub fn new(u0: T, u1: T, v0: T, v1: T) -> Result<Self> {
        let d = Self { u: [u0, u1], v: [v0, v1] };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.u, self.v]
            .iter()
            .all(|r| r[0].is_finite() && r[1].is_finite() && r[0] < r[1]);
        if !ok {
            return Err(GeomError::InvalidGrid("domain bounds must be finite with lo < hi".into()));
        }
        Ok(())
    }

    pub fn center(&self) -> (T, T) {
        let half = lit::<T>(0.5);
        ((self.u[0] + self.u[1]) * half, (self.v[0] + self.v[1]) * half)
    }

    /// Whether `(u, v)` lies in the rectangle shrunk by `margin` on every side.
    pub fn contains(&self, u: T, v: T, margin: T) -> bool {
        let slack = lit::<T>(1e-12) * T::one().max(self.u[1].abs()).max(self.v[1].abs());
        u >= self.u[0] + margin - slack
            && u <= self.u[1] - margin + slack
            && v >= self.v[0] + margin - slack
            && v <= self.v[1] - margin + slack
    }
}

/// Sampling grid: `nu` samples along `u` and `nv` along `v`, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub fn new(nu: usize, nv: usize) -> Self {
        Self { nu, nv }
    }

    pub fn validate(&self, min: usize) -> Result<()> {
        if self.nu < min || self.nv < min {
            return Err(GeomError::InvalidGrid(format!(
                "grid {}x{} is smaller than the minimum {min}x{min}",
                self.nu, self.nv
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Smallest spacing between neighbouring samples.
    pub fn spacing<T: Real>(&self, d: &Domain<T>) -> T {
        let step = |r: [T; 2], n: usize| (r[1] - r[0]) / T::from_usize(n.max(2) - 1).unwrap();
        step(d.u, self.nu).min(step(d.v, self.nv))
    }

    /// Sample points, `u` index outer, `v` index inner.
    pub fn points<T: Real>(&self, d: &Domain<T>) -> Vec<(T, T)> {
        let at = |r: [T; 2], i: usize, n: usize| {
            if n < 2 {
                (r[0] + r[1]) * lit::<T>(0.5)
            } else {
                r[0] + (r[1] - r[0]) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap()
            }
        };
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.nu {
            for j in 0..self.nv {
                out.push((at(d.u, i, self.nu), at(d.v, j, self.nv)));
            }
        }
        out
    }
}

/// Position and first and second partial derivatives of an immersion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceJet<T> {
    pub position: V3<T>,
    /// `[∂u F, ∂v F]`.
    pub first: [V3<T>; 2],
    /// `second[i][j] = ∂i ∂j F`.
    pub second: [[V3<T>; 2]; 2],
}

impl<T: Real> SurfaceJet<T> {
    pub fn from_jet2(p: V3<Jet2<T>>) -> Self {
        let c = |f: fn(&Jet2<T>) -> T| V3([f(&p[0]), f(&p[1]), f(&p[2])]);
        let uv = c(|j| j.hess[1]);
        Self {
            position: c(|j| j.re),
            first: [c(|j| j.grad[0]), c(|j| j.grad[1])],
            second: [[c(|j| j.hess[0]), uv], [uv, c(|j| j.hess[2])]],
        }
    }
}

/// Where a patch gets its derivatives from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JetSource {
    Analytic,
    FiniteDifference,
}

/// A map `(u, v) ↦ ℝ³`.
pub trait Immersion<T: Real>: Send + Sync {
    fn position(&self, u: T, v: T) -> Result<V3<T>>;

    /// Exact 2-jet, when the immersion can provide one.
    fn analytic_jet(&self, _u: T, _v: T) -> Result<SurfaceJet<T>> {
        Err(GeomError::NoAnalyticJet)
    }
}

/// Immersions written once over any [`Scalar`], so that forward-mode jets
/// come for free. Wrap in [`Analytic`] to use as an [`Immersion`].
pub trait AnalyticImmersion<T: Real>: Send + Sync {
    fn eval<S: Scalar<T>>(&self, u: S, v: S) -> Result<V3<S>>;
}

/// Adapter from [`AnalyticImmersion`] to [`Immersion`].
#[derive(Clone, Debug)]
pub struct Analytic<A>(pub A);

impl<T: Real, A: AnalyticImmersion<T>> Immersion<T> for Analytic<A> {
    fn position(&self, u: T, v: T) -> Result<V3<T>> {
        self.0.eval(u, v)
    }

    fn analytic_jet(&self, u: T, v: T) -> Result<SurfaceJet<T>> {
        let p = self.0.eval(Jet2::variable(u, 0), Jet2::variable(v, 1))?;
        Ok(SurfaceJet::from_jet2(p))
    }
}

/// An immersion given only pointwise; derivatives come from finite differences.
pub struct Pointwise<F>(pub F);

impl<T: Real, F> Immersion<T> for Pointwise<F>
where
    F: Fn(T, T) -> Result<V3<T>> + Send + Sync,
{
    fn position(&self, u: T, v: T) -> Result<V3<T>> {
        (self.0)(u, v)
    }
}

/// An immersed patch in `H₃(τ)` together with its normal orientation.
#[derive(Clone)]
pub struct SurfacePatch<T: Real> {
    params: SpaceParams<T>,
    domain: Domain<T>,
    immersion: Arc<dyn Immersion<T>>,
    jet_source: JetSource,
    orientation: Sign,
    step: T,
}

impl<T: Real> fmt::Debug for SurfacePatch<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("params", &self.params)
            .field("domain", &self.domain)
            .field("jet_source", &self.jet_source)
            .field("orientation", &self.orientation)
            .finish()
    }
}

impl<T: Real> SurfacePatch<T> {
    /// Builds a patch and fixes the normal orientation: `ν ≥ 0` at the domain
    /// center, or, when `ν` vanishes there, the first nonzero frame component
    /// of `N` positive.
    pub fn new(
        params: SpaceParams<T>,
        domain: Domain<T>,
        immersion: Arc<dyn Immersion<T>>,
        jet_source: JetSource,
    ) -> Result<Self> {
        params.require_heisenberg()?;
        domain.validate()?;
        let mut patch = Self {
            params,
            domain,
            immersion,
            jet_source,
            orientation: Sign::Plus,
            step: lit(SURFACE_STEP),
        };
        let (uc, vc) = domain.center();
        let (n, eps) = patch.raw_normal(uc, vc)?;
        let nu = eps.value::<T>() * frame_dot::<T, T>(params.delta, n, V3([T::zero(), T::zero(), T::one()]));
        let tiny = lit::<T>(1e-10);
        patch.orientation = if nu.abs() > tiny {
            Sign::of(nu)
        } else {
            n.0.iter().find(|c| c.abs() > tiny).map(|c| Sign::of(*c)).unwrap_or(Sign::Plus)
        };
        Ok(patch)
    }

    pub fn analytic<A: AnalyticImmersion<T> + 'static>(
        params: SpaceParams<T>,
        domain: Domain<T>,
        immersion: A,
    ) -> Result<Self> {
        Self::new(params, domain, Arc::new(Analytic(immersion)), JetSource::Analytic)
    }

    /// Same immersion, derivatives from finite differences instead.
    pub fn with_jet_source(&self, source: JetSource) -> Result<Self> {
        Self::new(self.params, self.domain, self.immersion.clone(), source)
    }

    /// Overrides the orientation gauge.
    pub fn with_orientation(mut self, orientation: Sign) -> Self {
        self.orientation = orientation;
        self
    }

    /// Step used for finite differences along the parameters.
    pub fn with_step(mut self, step: T) -> Self {
        self.step = step;
        self
    }

    pub fn params(&self) -> &SpaceParams<T> {
        &self.params
    }

    pub fn domain(&self) -> &Domain<T> {
        &self.domain
    }

    pub fn jet_source(&self) -> JetSource {
        self.jet_source
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    pub fn step(&self) -> T {
        self.step
    }

    /// Distance from the boundary inside which [`SurfacePatch::jet`] answers.
    pub fn jet_margin(&self) -> T {
        match self.jet_source {
            JetSource::Analytic => T::zero(),
            JetSource::FiniteDifference => self.step + self.step,
        }
    }

    pub fn position(&self, u: T, v: T) -> Result<V3<T>> {
        self.check_domain(u, v, T::zero())?;
        self.immersion.position(u, v)
    }

    fn check_domain(&self, u: T, v: T, margin: T) -> Result<()> {
        if !self.domain.contains(u, v, margin) {
            return Err(GeomError::OutOfDomain {
                u: u.to_f64().unwrap_or(f64::NAN),
                v: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Position and partials at `(u, v)`.
    ///
    /// Finite-difference sources only answer on the domain shrunk by twice the step.
    pub fn jet(&self, u: T, v: T) -> Result<SurfaceJet<T>> {
        match self.jet_source {
            JetSource::Analytic => {
                self.check_domain(u, v, T::zero())?;
                self.immersion.analytic_jet(u, v)
            }
            JetSource::FiniteDifference => {
                self.check_domain(u, v, self.jet_margin())?;
                self.fd_jet(u, v, self.step)
            }
        }
    }

    fn fd_jet(&self, u: T, v: T, h: T) -> Result<SurfaceJet<T>> {
        let f = |a: T, b: T| self.immersion.position(a, b).map(|p| p.0);
        let du = d1(|t| f(u + t, v), T::zero(), h)?;
        let dv = d1(|t| f(u, v + t), T::zero(), h)?;
        let duu = d2(|t| f(u + t, v), T::zero(), h)?;
        let dvv = d2(|t| f(u, v + t), T::zero(), h)?;
        let duv = d1(|s| d1(|t| f(u + s, v + t), T::zero(), h), T::zero(), h)?;
        Ok(SurfaceJet {
            position: V3(f(u, v)?),
            first: [V3(du), V3(dv)],
            second: [[V3(duu), V3(duv)], [V3(duv), V3(dvv)]],
        })
    }

    /// Unoriented unit normal (frame components) and causal character.
    fn raw_normal(&self, u: T, v: T) -> Result<(V3<T>, Sign)> {
        let j = self.jet(u, v)?;
        let (x, y) = (j.position[0], j.position[1]);
        let tau = self.params.tau;
        let cu = to_frame(tau, x, y, j.first[0]);
        let cv = to_frame(tau, x, y, j.first[1]);
        let n = wedge_frame::<T, T>(self.params.delta, cu, cv);
        let nn = frame_dot::<T, T>(self.params.delta, n, n);
        if !(nn.abs() > lit::<T>(1e-20)) {
            return Err(GeomError::DegenerateInducedMetric {
                u: u.to_f64().unwrap_or(f64::NAN),
                v: v.to_f64().unwrap_or(f64::NAN),
                det: nn.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok((n * nn.abs().sqrt().recip(), Sign::of(nn)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Cylinder;

    impl AnalyticImmersion<f64> for Cylinder {
        fn eval<S: Scalar<f64>>(&self, u: S, v: S) -> Result<V3<S>> {
            Ok(V3([-v.cos(), -v.sin(), u - v * 0.5]))
        }
    }

    #[test]
    fn analytic_and_fd_jets_agree() {
        let prm = SpaceParams::heisenberg(Sign::Minus, 0.5);
        let dom = Domain::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let a = SurfacePatch::analytic(prm, dom, Cylinder).unwrap();
        let f = a.with_jet_source(JetSource::FiniteDifference).unwrap();
        let (ja, jf) = (a.jet(0.3, -0.2).unwrap(), f.jet(0.3, -0.2).unwrap());
        assert_eq!(ja.first[1], V3([-(0.2f64).sin(), -(0.2f64).cos(), -0.5]));
        for i in 0..2 {
            assert!((ja.first[i] - jf.first[i]).max_abs() < 1e-11);
            for k in 0..2 {
                assert!((ja.second[i][k] - jf.second[i][k]).max_abs() < 1e-8);
            }
        }
        assert!(matches!(f.jet(0.9995, 0.0), Err(GeomError::OutOfDomain { .. })));
        assert!(a.jet(0.9995, 0.0).is_ok());
        assert!(matches!(a.jet(1.5, 0.0), Err(GeomError::OutOfDomain { .. })));
    }

    #[test]
    fn constant_immersion_has_zero_partials() {
        struct Constant;
        impl AnalyticImmersion<f64> for Constant {
            fn eval<S: Scalar<f64>>(&self, _u: S, _v: S) -> Result<V3<S>> {
                Ok(V3([S::from_real(1.0), S::from_real(2.0), S::from_real(3.0)]))
            }
        }
        let j = Analytic(Constant).analytic_jet(0.1, 0.2).unwrap();
        assert_eq!(j.first, [V3::zero(); 2]);
        assert_eq!(j.second[0][1], V3::zero());
    }

    #[test]
    fn grid_points_cover_domain() {
        let dom = Domain::new(0.0, 1.0, -2.0, 2.0).unwrap();
        let g = Grid::new(3, 5);
        let p = g.points(&dom);
        assert_eq!(p.len(), 15);
        assert_eq!(p[0], (0.0, -2.0));
        assert_eq!(p[14], (1.0, 2.0));
        assert_eq!(g.spacing(&dom), 0.5);
        assert!(Grid::new(4, 4).validate(8).is_err());
    }
}
