//! Generators for the classified surface families and their expected invariants.

pub mod classified;
pub mod eta;
pub mod helix;
pub mod profile;
pub mod quadrature;

use serde::{Deserialize, Serialize};

use crate::ambient::{Sign, SpaceParams};
use crate::error::{GeomError, Result};
use crate::scalar::{lit, Real};
use crate::surface::{Domain, Grid, SurfacePatch};

pub use classified::{make_cmc_cylinder, make_minimal_plane, ClassifiedCase};
pub use eta::{EtaKind, EtaSpec};
pub use helix::{make_helix_surface, canonical_u, patch_u, predicted_mu, predicted_mu_canonical, HelixImmersion};
pub use profile::{build_profile, HelixProfile, ProfileFunctions};

/// Causal character of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Spacelike,
    Timelike,
}

impl Causal {
    /// `ε`: sign of `g(N, N)`.
    pub fn epsilon(self) -> Sign {
        match self {
            Causal::Spacelike => Sign::Minus,
            Causal::Timelike => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    MinimalPlane,
    CmcCylinder,
    Helix,
}

/// JSON description of one family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDescriptor<T> {
    pub family: FamilyKind,
    pub delta: Sign,
    pub causal: Causal,
    pub tau: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<EtaSpec<T>>,
    /// `[f₁, f₂, f₃]` at the profile anchor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<[T; 3]>,
    pub domain: Domain<T>,
    pub grid: Grid,
}

impl<T: Real> FamilyDescriptor<T> {
    pub fn params(&self) -> SpaceParams<T> {
        SpaceParams::heisenberg(self.delta, self.tau)
    }

    pub fn helix_profile(&self) -> Result<Option<HelixProfile<T>>> {
        if self.family != FamilyKind::Helix {
            return Ok(None);
        }
        helix::require_delta_plus(self.delta)?;
        let theta = self.theta.ok_or_else(|| GeomError::InvalidProfile("helix needs theta".into()))?;
        let mut p = HelixProfile::new(
            self.causal,
            theta,
            self.c.unwrap_or_else(T::zero),
            self.eta.clone().unwrap_or_else(|| EtaSpec::constant(T::zero())),
            self.tau,
        );
        p.initial = self.initial.unwrap_or([T::zero(); 3]);
        Ok(Some(p))
    }

    /// Short identifier used in reports.
    pub fn label(&self) -> String {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let causal = match self.causal {
            Causal::Spacelike => "spacelike",
            Causal::Timelike => "timelike",
        };
        let mut s = format!("{:?}/delta={}/{causal}/tau={}", self.family, self.delta.as_i8(), f(self.tau));
        if let Some(p) = self.phi0 {
            s += &format!("/phi0={}", f(p));
        }
        if let Some(t) = self.theta {
            s += &format!("/theta={}", f(t));
        }
        if let Some(e) = &self.eta {
            let c: Vec<String> = e.coefficients.iter().map(|x| f(*x).to_string()).collect();
            s += &format!("/eta={:?}[{}]", e.kind, c.join(","));
        }
        s
    }
}

/// Invariants a family is known to have.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Expected<T> {
    pub epsilon: Sign,
    /// Angle function under the `ν ≥ 0` gauge.
    pub nu: T,
    /// `4δετ²ν²`.
    pub k: T,
    pub minimal: bool,
    pub cmc: bool,
}

/// A built family member.
#[derive(Clone, Debug)]
pub struct Family<T: Real> {
    pub descriptor: FamilyDescriptor<T>,
    pub patch: SurfacePatch<T>,
    pub profile: Option<HelixProfile<T>>,
    pub expected: Expected<T>,
}

impl<T: Real> Family<T> {
    pub fn build(descriptor: &FamilyDescriptor<T>) -> Result<Self> {
        let prm = descriptor.params();
        prm.require_nonzero_tau()?;
        let d = descriptor.domain;
        let eps = descriptor.causal.epsilon();
        let (patch, profile, nu) = match descriptor.family {
            FamilyKind::MinimalPlane => {
                let phi0 = descriptor.phi0.unwrap_or_else(T::zero);
                (make_minimal_plane(prm, descriptor.causal, phi0, d)?, None, T::zero())
            }
            FamilyKind::CmcCylinder => (make_cmc_cylinder(prm, descriptor.causal, d)?, None, T::zero()),
            FamilyKind::Helix => {
                let p = descriptor.helix_profile()?.expect("helix descriptor");
                let nu = p.angle().0.abs();
                (make_helix_surface(&p, d)?, Some(p), nu)
            }
        };
        let k = lit::<T>(4.0) * prm.delta() * eps.value::<T>() * prm.tau * prm.tau * nu * nu;
        let expected = Expected {
            epsilon: eps,
            nu,
            k,
            minimal: descriptor.family == FamilyKind::MinimalPlane,
            cmc: descriptor.family != FamilyKind::Helix,
        };
        Ok(Self { descriptor: descriptor.clone(), patch, profile, expected })
    }
}

fn unit_domain<T: Real>() -> Domain<T> {
    Domain { u: [-T::one(), T::one()], v: [-T::one(), T::one()] }
}

const CLASSIFIED: [(Sign, Causal); 3] =
    [(Sign::Minus, Causal::Timelike), (Sign::Plus, Causal::Timelike), (Sign::Plus, Causal::Spacelike)];

/// Every classified family over a small parameter sample, on `[−1, 1]²`.
pub fn standard_family_matrix<T: Real>(grid: Grid) -> Vec<FamilyDescriptor<T>> {
    let base = |family, delta, causal, tau: f64| FamilyDescriptor {
        family,
        delta,
        causal,
        tau: lit::<T>(tau),
        phi0: None,
        theta: None,
        c: None,
        eta: None,
        initial: None,
        domain: unit_domain(),
        grid,
    };
    let mut out = Vec::new();
    for (delta, causal) in CLASSIFIED {
        for phi0 in [0.0, 0.7, -1.3] {
            out.push(FamilyDescriptor { phi0: Some(lit(phi0)), ..base(FamilyKind::MinimalPlane, delta, causal, 1.0) });
        }
    }
    for (delta, causal) in CLASSIFIED {
        for tau in [0.5, 1.0, 2.0] {
            out.push(base(FamilyKind::CmcCylinder, delta, causal, tau));
        }
    }
    let etas = || {
        [EtaSpec::constant(T::zero()), EtaSpec::linear(T::zero(), T::one()), EtaSpec::sinusoidal(lit(0.3), T::one(), T::zero())]
    };
    for (causal, theta) in [(Causal::Spacelike, 1f64.asinh()), (Causal::Timelike, std::f64::consts::FRAC_PI_4)] {
        for tau in [0.5, 1.0] {
            for eta in etas() {
                out.push(FamilyDescriptor {
                    theta: Some(lit(theta)),
                    c: Some(lit(0.1)),
                    eta: Some(eta),
                    ..base(FamilyKind::Helix, Sign::Plus, causal, tau)
                });
            }
        }
    }
    out
}
