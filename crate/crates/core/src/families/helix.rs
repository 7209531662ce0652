//! Constant-angle surfaces with `ν ≠ 0` in `H₃(τ)` with `δ = 1`.
//!
//! With `ν = sinh ϑ, C = cosh ϑ` (spacelike) the immersion is
//!
//! ```text
//! x = C/(2τν) cosh u + f₁(v)
//! y = C/(2τν) sinh u + f₂(v)
//! z = −C²/(4τν²)(u − c) − C/(2ν) (f₂ cosh u − f₁ sinh u) + f₃(v)
//! ```
//!
//! and with `ν = sin ϑ, C = cos ϑ` (timelike)
//!
//! ```text
//! x = −C/(2τν) sinh u + f₁(v)
//! y = −C/(2τν) cosh u + f₂(v)
//! z = C²/(4τν²)(u − c) − C/(2ν) (f₁ cosh u − f₂ sinh u) + f₃(v)
//! ```

use crate::ambient::{Sign, SpaceParams};
use crate::error::{GeomError, Result};
use crate::linalg::V3;
use crate::scalar::{lit, Real, Scalar};
use crate::surface::{AnalyticImmersion, Domain, SurfacePatch};

use super::profile::{build_profile, HelixProfile, ProfileFunctions};
use super::Causal;

#[derive(Clone, Debug)]
pub struct HelixImmersion<T> {
    profile: ProfileFunctions<T>,
}

impl<T: Real> HelixImmersion<T> {
    pub fn new(profile: ProfileFunctions<T>) -> Self {
        Self { profile }
    }

    pub fn profile(&self) -> &ProfileFunctions<T> {
        &self.profile
    }
}

impl<T: Real> AnalyticImmersion<T> for HelixImmersion<T> {
    fn eval<S: Scalar<T>>(&self, u: S, v: S) -> Result<V3<S>> {
        let p = self.profile.profile();
        let [f1, f2, f3] = self.profile.lift(v)?;
        let (nu, c) = p.angle();
        let two = lit::<T>(2.0);
        let r = c / (two * p.tau * nu);
        let drift = c * c / (two * two * p.tau * nu * nu);
        let k = c / (two * nu);
        let (ch, sh) = (u.cosh(), u.sinh());
        Ok(match p.causal {
            Causal::Spacelike => V3([
                ch * r + f1,
                sh * r + f2,
                -((u - p.c) * drift) - (f2 * ch - f1 * sh) * k + f3,
            ]),
            Causal::Timelike => V3([
                f1 - sh * r,
                f2 - ch * r,
                (u - p.c) * drift - (f1 * ch - f2 * sh) * k + f3,
            ]),
        })
    }
}

/// Builds the profile on the `v`-range of `domain` and the patch over it.
pub fn make_helix_surface<T: Real>(profile: &HelixProfile<T>, domain: Domain<T>) -> Result<SurfacePatch<T>> {
    domain.validate()?;
    let funcs = build_profile(profile, domain.v)?;
    let params = SpaceParams::heisenberg(Sign::Plus, profile.tau);
    SurfacePatch::analytic(params, domain, HelixImmersion::new(funcs))
}

/// `S₂₂` of the adapted basis in the patch's own `u`:
/// `2τν tanh(c − u + η)` (spacelike) or `2τν tanh(u − c + η)` (timelike).
pub fn predicted_mu<T: Real>(profile: &HelixProfile<T>, u: T, v: T) -> T {
    predicted_mu_canonical(profile, canonical_u(profile, u), v)
}

/// `μ = 2τν tanh(2τν² u + η(v))` in the canonical coordinate `u`.
pub fn predicted_mu_canonical<T: Real>(profile: &HelixProfile<T>, u_canon: T, v: T) -> T {
    let (nu, _) = profile.angle();
    let two = lit::<T>(2.0);
    let eta = profile.eta.eval(v)[0];
    two * profile.tau * nu * (two * profile.tau * nu * nu * u_canon + eta).tanh()
}

/// Canonical `u` of a patch `u`: `(c − u)/(2τ sinh²ϑ)` or `(u − c)/(2τ sin²ϑ)`.
pub fn canonical_u<T: Real>(profile: &HelixProfile<T>, u: T) -> T {
    let (nu, _) = profile.angle();
    let scale = lit::<T>(2.0) * profile.tau * nu * nu;
    match profile.causal {
        Causal::Spacelike => (profile.c - u) / scale,
        Causal::Timelike => (u - profile.c) / scale,
    }
}

/// Inverse of [`canonical_u`].
pub fn patch_u<T: Real>(profile: &HelixProfile<T>, u_canon: T) -> T {
    let (nu, _) = profile.angle();
    let scale = lit::<T>(2.0) * profile.tau * nu * nu;
    match profile.causal {
        Causal::Spacelike => profile.c - u_canon * scale,
        Causal::Timelike => profile.c + u_canon * scale,
    }
}

pub(crate) fn require_delta_plus(delta: Sign) -> Result<()> {
    if delta != Sign::Plus {
        return Err(GeomError::InvalidCombination(
            "helix families with ν ≠ 0 are only generated for δ = 1".into(),
        ));
    }
    Ok(())
}
