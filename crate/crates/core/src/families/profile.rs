//! Helix profiles `f₁, f₂, f₃` of the spacelike and timelike helix families.
//!
//! With `C = cosh ϑ` (spacelike) or `cos ϑ` (timelike) and the phase
//! `θ(v) = η(v) + c` (spacelike) or `η(v) − c` (timelike):
//!
//! ```text
//! spacelike:  f₁′ = C cosh θ,   f₂′ = C sinh θ
//! timelike:   f₁′ = −C sinh θ,  f₂′ = C cosh θ
//! both:       f₃′ = τ (f₁ f₂′ − f₂ f₁′)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::fd::d1;
use crate::scalar::{lit, Dual, Real, Scalar};

use super::eta::EtaSpec;
use super::quadrature::{adaptive_simpson, hermite};
use super::Causal;

/// Node spacing of quadrature tables.
pub const TABLE_SPACING: f64 = 1e-3;
/// Absolute tolerance of the adaptive quadrature over the whole range.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Constant-angle data of a helix family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelixProfile<T> {
    pub theta: T,
    pub c: T,
    pub eta: EtaSpec<T>,
    pub tau: T,
    pub causal: Causal,
    /// `f(v_a)` at the anchor `v_a` (0 clamped into the range).
    #[serde(default)]
    pub initial: [T; 3],
}

impl<T: Real> HelixProfile<T> {
    pub fn new(causal: Causal, theta: T, c: T, eta: EtaSpec<T>, tau: T) -> Self {
        Self { theta, c, eta, tau, causal, initial: [T::zero(); 3] }
    }

    pub fn validate(&self) -> Result<()> {
        self.eta.validate()?;
        if self.tau == T::zero() {
            return Err(GeomError::ZeroTau);
        }
        if !(self.theta.is_finite() && self.c.is_finite() && self.tau.is_finite()) {
            return Err(GeomError::InvalidProfile("non-finite parameter".into()));
        }
        match self.causal {
            Causal::Spacelike if !(self.theta > T::zero()) => {
                Err(GeomError::InvalidProfile("spacelike helices need theta > 0".into()))
            }
            Causal::Timelike
                if !(self.theta.sin().abs() > lit(1e-8) && self.theta.cos().abs() > lit(1e-8)) =>
            {
                Err(GeomError::InvalidProfile("timelike helices need sin(theta) and cos(theta) nonzero".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(ν, C)`: `(sinh ϑ, cosh ϑ)` or `(sin ϑ, cos ϑ)`.
    pub fn angle(&self) -> (T, T) {
        match self.causal {
            Causal::Spacelike => (self.theta.sinh(), self.theta.cosh()),
            Causal::Timelike => (self.theta.sin(), self.theta.cos()),
        }
    }

    /// Signed shift applied to `η` in the phase.
    fn shift(&self) -> T {
        match self.causal {
            Causal::Spacelike => self.c,
            Causal::Timelike => -self.c,
        }
    }

    /// `f₁′² − f₂′²`, which is `cosh²ϑ` or `−cos²ϑ`.
    pub fn speed(&self) -> T {
        let (_, c) = self.angle();
        match self.causal {
            Causal::Spacelike => c * c,
            Causal::Timelike => -c * c,
        }
    }

    /// `[f₁′, f₂′]` and `[f₁″, f₂″]` at `v`.
    pub fn planar_derivatives(&self, v: T) -> ([T; 2], [T; 2]) {
        let (_, c) = self.angle();
        let [e, de, _] = self.eta.eval(v);
        let th = e + self.shift();
        let (sh, ch) = (th.sinh(), th.cosh());
        match self.causal {
            Causal::Spacelike => ([c * ch, c * sh], [c * sh * de, c * ch * de]),
            Causal::Timelike => ([-c * sh, c * ch], [-c * ch * de, c * sh * de]),
        }
    }
}

#[derive(Clone, Debug)]
enum Repr<T> {
    /// `η = a₀ + a₁v`.
    Affine { a0: T, a1: T },
    /// Values of `f₁, f₂, f₃` at equally spaced nodes.
    Table { h: T, nodes: Vec<[T; 3]> },
}

/// Evaluable `f₁, f₂, f₃` on a `v`-range.
#[derive(Clone, Debug)]
pub struct ProfileFunctions<T> {
    profile: HelixProfile<T>,
    range: [T; 2],
    anchor: T,
    repr: Repr<T>,
}

/// Closed forms for affine `η`, relative to the anchor and before initial offsets.
fn affine_values<T: Real, S: Scalar<T>>(p: &HelixProfile<T>, a0: T, a1: T, anchor: T, v: S) -> [S; 3] {
    let (_, c) = p.angle();
    let half = lit::<T>(0.5);
    let d = v - anchor;
    let th_a = a0 + a1 * anchor + p.shift();
    // midpoint phase (θ + θ_a)/2
    let m = d * (a1 * half) + th_a;
    let k = (d * (a1 * half)).sinhc() * d * c;
    let (f1, f2) = match p.causal {
        Causal::Spacelike => (m.cosh() * k, m.sinh() * k),
        Causal::Timelike => (-(m.sinh() * k), m.cosh() * k),
    };
    let f3 = (d * a1).sinh_defect() * d * d * (p.tau * c * c);
    [f1, f2, f3]
}

impl<T: Real> ProfileFunctions<T> {
    pub fn profile(&self) -> &HelixProfile<T> {
        &self.profile
    }

    pub fn range(&self) -> [T; 2] {
        self.range
    }

    pub fn anchor(&self) -> T {
        self.anchor
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.repr, Repr::Affine { .. })
    }

    fn check_range(&self, v: T) -> Result<()> {
        let slack = lit::<T>(1e-12) * T::one().max(self.range[1].abs());
        if v < self.range[0] - slack || v > self.range[1] + slack || !v.is_finite() {
            return Err(GeomError::OutOfDomain { u: f64::NAN, v: v.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(())
    }

    /// Adds the initial offsets to anchored values. Shifting `f₁, f₂` by
    /// constants changes `f₃` by `τ(o₁f₂ − o₂f₁)`.
    fn offset<S: Scalar<T>>(&self, f: [S; 3]) -> [S; 3] {
        let [o1, o2, o3] = self.profile.initial;
        let tau = self.profile.tau;
        [f[0] + o1, f[1] + o2, f[2] + (f[1] * o1 - f[0] * o2) * tau + o3]
    }

    /// `[f₁, f₂, f₃]` at `v`.
    pub fn values(&self, v: T) -> Result<[T; 3]> {
        self.check_range(v)?;
        match &self.repr {
            Repr::Affine { a0, a1 } => Ok(self.offset(affine_values(&self.profile, *a0, *a1, self.anchor, v))),
            Repr::Table { h, nodes } => Ok(self.interpolate(*h, nodes, v)),
        }
    }

    fn interpolate(&self, h: T, nodes: &[[T; 3]], v: T) -> [T; 3] {
        let x = (v - self.range[0]) / h;
        let last = nodes.len() - 2;
        let k = x.floor().to_usize().unwrap_or(0).min(last);
        let t = x - T::from_usize(k).unwrap();
        let (va, vb) = (self.node(k, h), self.node(k + 1, h));
        let (da, db) = (self.derivatives_from(va, nodes[k]), self.derivatives_from(vb, nodes[k + 1]));
        std::array::from_fn(|i| hermite(t, h, [nodes[k][i], nodes[k + 1][i]], [da[i], db[i]]))
    }

    fn node(&self, k: usize, h: T) -> T {
        self.range[0] + h * T::from_usize(k).unwrap()
    }

    /// Exact first derivatives given values at `v`.
    fn derivatives_from(&self, v: T, f: [T; 3]) -> [T; 3] {
        let ([d1, d2], _) = self.profile.planar_derivatives(v);
        [d1, d2, self.profile.tau * (f[0] * d2 - f[1] * d1)]
    }

    /// `[f₁′, f₂′, f₃′]` from the defining equations.
    pub fn first_derivatives(&self, v: T) -> Result<[T; 3]> {
        Ok(self.derivatives_from(v, self.values(v)?))
    }

    /// `[f₁″, f₂″, f₃″]` from the defining equations.
    pub fn second_derivatives(&self, v: T) -> Result<[T; 3]> {
        let f = self.values(v)?;
        let (_, [dd1, dd2]) = self.profile.planar_derivatives(v);
        Ok([dd1, dd2, self.profile.tau * (f[0] * dd2 - f[1] * dd1)])
    }

    /// `f₁, f₂, f₃` lifted to any scalar: closed forms are evaluated directly,
    /// tables go through the chain rule with the exact derivatives.
    pub fn lift<S: Scalar<T>>(&self, v: S) -> Result<[S; 3]> {
        let v0 = v.re();
        self.check_range(v0)?;
        match &self.repr {
            Repr::Affine { a0, a1 } => Ok(self.offset(affine_values(&self.profile, *a0, *a1, self.anchor, v))),
            Repr::Table { .. } => {
                let f = self.values(v0)?;
                let d = self.derivatives_from(v0, f);
                let dd = self.second_derivatives(v0)?;
                Ok(std::array::from_fn(|i| v.chain(f[i], d[i], dd[i])))
            }
        }
    }

    /// Residuals `|f₁′² − f₂′² − (±C²)|` and `|f₃′ − τ(f₁f₂′ − f₂f₁′)|`, with
    /// the derivatives measured from the represented functions: forward-mode
    /// for closed forms, fourth-order differences (step `1e−3`) for tables.
    /// Tables need the stencil inside the range.
    pub fn constraint_residuals(&self, v: T) -> Result<[T; 2]> {
        self.check_range(v)?;
        let (f, df) = match &self.repr {
            Repr::Affine { .. } => {
                let x = self.lift(Dual::variable(v, 0))?;
                (x.map(|d| d.re), x.map(|d| d.grad[0]))
            }
            Repr::Table { .. } => {
                let h = lit::<T>(TABLE_SPACING);
                (self.values(v)?, d1(|t| self.values(v + t), T::zero(), h)?)
            }
        };
        let r1 = (df[0] * df[0] - df[1] * df[1] - self.profile.speed()).abs();
        let r2 = (df[2] - self.profile.tau * (f[0] * df[1] - f[1] * df[0])).abs();
        Ok([r1, r2])
    }
}

/// Builds `f₁, f₂, f₃` on `v_range`.
///
/// Affine `η` gets closed forms. Otherwise `f₁, f₂` are tabulated at spacing
/// at most `1e−3` by adaptive Simpson, and `f₃` is integrated from the cubic
/// Hermite interpolants of `f₁, f₂`.
pub fn build_profile<T: Real>(profile: &HelixProfile<T>, v_range: [T; 2]) -> Result<ProfileFunctions<T>> {
    profile.validate()?;
    if !(v_range[0] < v_range[1] && v_range[0].is_finite() && v_range[1].is_finite()) {
        return Err(GeomError::InvalidGrid("profile range must satisfy v0 < v1".into()));
    }
    let anchor = T::zero().max(v_range[0]).min(v_range[1]);
    if let Some((a0, a1)) = profile.eta.affine() {
        return Ok(ProfileFunctions { profile: profile.clone(), range: v_range, anchor, repr: Repr::Affine { a0, a1 } });
    }

    let len = v_range[1] - v_range[0];
    let n = (len / lit::<T>(TABLE_SPACING)).ceil().to_usize().unwrap_or(1).max(1);
    let h = len / T::from_usize(n).unwrap();
    let tol = lit::<T>(QUADRATURE_TOL) / T::from_usize(n).unwrap();
    let node = |k: usize| v_range[0] + h * T::from_usize(k).unwrap();

    // Pass 1: f₁, f₂ from v₀.
    let mut nodes = vec![[T::zero(); 3]; n + 1];
    for k in 0..n {
        let (a, b) = (node(k), node(k + 1));
        for i in 0..2 {
            let step = adaptive_simpson(|s| profile.planar_derivatives(s).0[i], a, b, tol)?;
            nodes[k + 1][i] = nodes[k][i] + step;
        }
    }
    let mut out = ProfileFunctions {
        profile: HelixProfile { initial: [T::zero(); 3], ..profile.clone() },
        range: v_range,
        anchor,
        repr: Repr::Table { h, nodes: Vec::new() },
    };
    // Re-anchor f₁, f₂ before f₃ depends on them.
    let at_anchor = out.interpolate(h, &nodes, anchor);
    for f in nodes.iter_mut() {
        f[0] = f[0] - at_anchor[0] + profile.initial[0];
        f[1] = f[1] - at_anchor[1] + profile.initial[1];
    }
    // Pass 2: f₃ from the interpolated f₁, f₂.
    for k in 0..n {
        let (a, b) = (node(k), node(k + 1));
        let integrand = |s: T| {
            let f = out.interpolate(h, &nodes, s);
            let ([d1, d2], _) = profile.planar_derivatives(s);
            profile.tau * (f[0] * d2 - f[1] * d1)
        };
        let step = adaptive_simpson(integrand, a, b, tol)?;
        nodes[k + 1][2] = nodes[k][2] + step;
    }
    let f3a = out.interpolate(h, &nodes, anchor)[2];
    for f in nodes.iter_mut() {
        f[2] = f[2] - f3a + profile.initial[2];
    }
    out.profile = profile.clone();
    out.repr = Repr::Table { h, nodes };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::eta::EtaSpec;

    fn spacelike(eta: EtaSpec<f64>, c: f64) -> HelixProfile<f64> {
        HelixProfile::new(Causal::Spacelike, 1f64.asinh(), c, eta, 1.0)
    }

    #[test]
    fn constant_eta_is_linear_in_v() {
        let k = 0.4;
        let p = spacelike(EtaSpec::constant(k), 0.0);
        let f = build_profile(&p, [-1.0, 1.0]).unwrap();
        let ch = 1f64.asinh().cosh();
        for v in [-0.8, 0.0, 0.3, 1.0] {
            let x = f.values(v).unwrap();
            assert!((x[0] - ch * k.cosh() * v).abs() < 1e-14);
            assert!((x[1] - ch * k.sinh() * v).abs() < 1e-14);
            // f₃′ = τ(f₁f₂′ − f₂f₁′) vanishes for straight lines through the anchor.
            assert!(x[2].abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        // A degree-1 polynomial goes through the table path.
        for causal in [Causal::Spacelike, Causal::Timelike] {
            let theta: f64 = if causal == Causal::Spacelike { 0.8 } else { 0.6 };
            let mk = |eta| HelixProfile { initial: [0.1, -0.2, 0.3], ..HelixProfile::new(causal, theta, 0.25, eta, 0.7) };
            let a = build_profile(&mk(EtaSpec::linear(0.2, 0.9)), [-0.5, 1.0]).unwrap();
            let b = build_profile(&mk(EtaSpec::polynomial(vec![0.2, 0.9])), [-0.5, 1.0]).unwrap();
            assert!(a.is_closed_form() && !b.is_closed_form());
            for v in [-0.5, -0.1234, 0.0, 0.5, 0.9999, 1.0] {
                let (x, y) = (a.values(v).unwrap(), b.values(v).unwrap());
                for i in 0..3 {
                    assert!((x[i] - y[i]).abs() < 1e-10, "{causal:?} f{} at {v}: {} vs {}", i + 1, x[i], y[i]);
                }
            }
        }
    }

    #[test]
    fn constraints_hold() {
        let eta = [EtaSpec::linear(0.0, 1.0), EtaSpec::sinusoidal(0.3, 1.0, 0.0), EtaSpec::polynomial(vec![0.1, 0.0, -0.5, 0.2])];
        for causal in [Causal::Spacelike, Causal::Timelike] {
            for e in &eta {
                let p = HelixProfile::new(causal, 0.7, 0.1, e.clone(), 1.0);
                let f = build_profile(&p, [-1.0, 1.0]).unwrap();
                let tol = if f.is_closed_form() { 1e-10 } else { 1e-8 };
                for k in 0..=20 {
                    let v = -0.99 + 0.099 * k as f64;
                    let r = f.constraint_residuals(v).unwrap();
                    assert!(r[0] <= tol && r[1] <= tol, "{causal:?} {:?} v={v}: {r:?}", e.kind);
                }
            }
        }
    }

    #[test]
    fn lift_carries_derivatives() {
        let p = HelixProfile::new(Causal::Timelike, 0.6, 0.2, EtaSpec::sinusoidal(0.3, 2.0, 0.1), 0.5);
        let f = build_profile(&p, [-1.0, 1.0]).unwrap();
        let j = f.lift(crate::scalar::Jet2::variable(0.3, 1)).unwrap();
        let d = f.first_derivatives(0.3).unwrap();
        let dd = f.second_derivatives(0.3).unwrap();
        for i in 0..3 {
            assert_eq!(j[i].grad, [0.0, d[i]]);
            assert_eq!(j[i].hess[2], dd[i]);
        }
    }

    #[test]
    fn rejects_invalid_profiles() {
        let p = HelixProfile::new(Causal::Spacelike, 0.0, 0.0, EtaSpec::constant(0.0), 1.0);
        assert!(matches!(build_profile(&p, [0.0, 1.0]), Err(GeomError::InvalidProfile(_))));
        let p = HelixProfile::new(Causal::Timelike, std::f64::consts::FRAC_PI_2, 0.0, EtaSpec::constant(0.0), 1.0);
        assert!(matches!(build_profile(&p, [0.0, 1.0]), Err(GeomError::InvalidProfile(_))));
        let p = HelixProfile::new(Causal::Timelike, 0.5, 0.0, EtaSpec::constant(0.0), 0.0);
        assert_eq!(build_profile(&p, [0.0, 1.0]).unwrap_err(), GeomError::ZeroTau);
    }
}
