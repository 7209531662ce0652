use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaKind {
    /// `[k]`: `η = k`.
    Constant,
    /// `[a₀, a₁]`: `η = a₀ + a₁v`.
    Linear,
    /// `[a₀, …, a_d]` with `d ≤ 6`: `η = Σ aᵢvⁱ`.
    Polynomial,
    /// `[A, ω, φ]`: `η = A sin(ωv + φ)`.
    Sinusoidal,
}

/// The free function `η(v)` of a helix profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaSpec<T> {
    pub kind: EtaKind,
    pub coefficients: Vec<T>,
}

impl<T: Real> EtaSpec<T> {
    pub fn constant(k: T) -> Self {
        Self { kind: EtaKind::Constant, coefficients: vec![k] }
    }

    pub fn linear(a0: T, a1: T) -> Self {
        Self { kind: EtaKind::Linear, coefficients: vec![a0, a1] }
    }

    pub fn polynomial(coefficients: Vec<T>) -> Self {
        Self { kind: EtaKind::Polynomial, coefficients }
    }

    pub fn sinusoidal(amplitude: T, omega: T, phase: T) -> Self {
        Self { kind: EtaKind::Sinusoidal, coefficients: vec![amplitude, omega, phase] }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.coefficients.len();
        let ok = match self.kind {
            EtaKind::Constant => n == 1,
            EtaKind::Linear => n == 2,
            EtaKind::Polynomial => (1..=7).contains(&n),
            EtaKind::Sinusoidal => n == 3,
        };
        if !ok {
            return Err(GeomError::InvalidProfile(format!(
                "eta kind {:?} does not take {n} coefficients",
                self.kind
            )));
        }
        if !self.coefficients.iter().all(|c| c.is_finite()) {
            return Err(GeomError::InvalidProfile("eta coefficients must be finite".into()));
        }
        Ok(())
    }

    /// `(a₀, a₁)` when `η` is affine and gets closed-form profiles.
    pub fn affine(&self) -> Option<(T, T)> {
        match self.kind {
            EtaKind::Constant => Some((self.coefficients[0], T::zero())),
            EtaKind::Linear => Some((self.coefficients[0], self.coefficients[1])),
            _ => None,
        }
    }

    /// `[η, η′, η″]` at `v`.
    pub fn eval(&self, v: T) -> [T; 3] {
        let c = &self.coefficients;
        match self.kind {
            EtaKind::Constant => [c[0], T::zero(), T::zero()],
            EtaKind::Linear => [c[0] + c[1] * v, c[1], T::zero()],
            EtaKind::Polynomial => {
                let (mut p, mut dp, mut d2p) = (T::zero(), T::zero(), T::zero());
                for &a in c.iter().rev() {
                    d2p = d2p * v + dp + dp;
                    dp = dp * v + p;
                    p = p * v + a;
                }
                [p, dp, d2p]
            }
            EtaKind::Sinusoidal => {
                let (a, w, phi) = (c[0], c[1], c[2]);
                let x = w * v + phi;
                [a * x.sin(), a * w * x.cos(), -a * w * w * x.sin()]
            }
        }
    }
}
