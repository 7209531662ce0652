//! The `ν = 0` families: minimal planes and proper CMC cylinders.

use crate::ambient::{Sign, SpaceParams};
use crate::error::{GeomError, Result};
use crate::linalg::V3;
use crate::scalar::{Real, Scalar};
use crate::surface::{AnalyticImmersion, Domain, SurfacePatch};

use super::Causal;

/// Which closed form of a classified family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifiedCase {
    /// `δ = −1`; the surface is timelike.
    Negative,
    /// `δ = 1`, timelike surface.
    PositiveTimelike,
    /// `δ = 1`, spacelike surface.
    PositiveSpacelike,
}

impl ClassifiedCase {
    pub fn of(delta: Sign, causal: Causal) -> Result<Self> {
        match (delta, causal) {
            (Sign::Minus, Causal::Timelike) => Ok(Self::Negative),
            (Sign::Minus, Causal::Spacelike) => Err(GeomError::InvalidCombination(
                "δ = −1 admits only timelike ν = 0 surfaces".into(),
            )),
            (Sign::Plus, Causal::Timelike) => Ok(Self::PositiveTimelike),
            (Sign::Plus, Causal::Spacelike) => Ok(Self::PositiveSpacelike),
        }
    }
}

/// Minimal plane through the `z`-axis.
#[derive(Clone, Copy, Debug)]
pub struct MinimalPlane<T> {
    pub case: ClassifiedCase,
    pub phi0: T,
}

impl<T: Real> AnalyticImmersion<T> for MinimalPlane<T> {
    fn eval<S: Scalar<T>>(&self, u: S, v: S) -> Result<V3<S>> {
        let p = self.phi0;
        let (a, b) = match self.case {
            ClassifiedCase::Negative => (p.sin(), -p.cos()),
            ClassifiedCase::PositiveTimelike => (p.sinh(), p.cosh()),
            ClassifiedCase::PositiveSpacelike => (p.cosh(), p.sinh()),
        };
        Ok(V3([v * a, v * b, u]))
    }
}

/// Vertical cylinder over a unit circle or hyperbola.
#[derive(Clone, Copy, Debug)]
pub struct CmcCylinder<T> {
    pub case: ClassifiedCase,
    pub tau: T,
}

impl<T: Real> AnalyticImmersion<T> for CmcCylinder<T> {
    fn eval<S: Scalar<T>>(&self, u: S, v: S) -> Result<V3<S>> {
        let t = self.tau;
        Ok(match self.case {
            ClassifiedCase::Negative => V3([-v.cos(), -v.sin(), u - v * t]),
            ClassifiedCase::PositiveTimelike => V3([v.cosh(), v.sinh(), u - v * t]),
            ClassifiedCase::PositiveSpacelike => V3([v.sinh(), v.cosh(), u + v * t]),
        })
    }
}

pub fn make_minimal_plane<T: Real>(
    params: SpaceParams<T>,
    causal: Causal,
    phi0: T,
    domain: Domain<T>,
) -> Result<SurfacePatch<T>> {
    params.require_nonzero_tau()?;
    let case = ClassifiedCase::of(params.delta, causal)?;
    SurfacePatch::analytic(params, domain, MinimalPlane { case, phi0 })
}

pub fn make_cmc_cylinder<T: Real>(
    params: SpaceParams<T>,
    causal: Causal,
    domain: Domain<T>,
) -> Result<SurfacePatch<T>> {
    params.require_nonzero_tau()?;
    let case = ClassifiedCase::of(params.delta, causal)?;
    SurfacePatch::analytic(params, domain, CmcCylinder { case, tau: params.tau })
}
