//! Scalar abstractions.
//!
//! [`Real`] is the base floating-point type (`f32` or `f64`). [`Scalar`] is
//! anything that can flow through the closed-form geometry: plain reals, and
//! the forward-mode types [`Dual`] (value + gradient in `(u, v)`) and
//! [`Jet2`] (value + gradient + Hessian in `(u, v)`).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Base real type used for all geometry.
pub trait Real:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in the target float type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for [`Real::lit`].
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// A number that supports the arithmetic and elementary functions needed to
/// evaluate immersions and frame algebra.
pub trait Scalar<T: Real>:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<T, Output = Self>
    + Sub<T, Output = Self>
    + Mul<T, Output = Self>
    + Div<T, Output = Self>
{
    fn from_real(x: T) -> Self;

    /// The real (value) part.
    fn re(self) -> T;

    /// Applies a scalar function whose value and first two derivatives at
    /// `self.re()` are `f`, `df`, `d2f`.
    fn chain(self, f: T, df: T, d2f: T) -> Self;

    #[inline]
    fn zero() -> Self {
        Self::from_real(T::zero())
    }

    #[inline]
    fn sin(self) -> Self {
        let x = self.re();
        self.chain(x.sin(), x.cos(), -x.sin())
    }

    #[inline]
    fn cos(self) -> Self {
        let x = self.re();
        self.chain(x.cos(), -x.sin(), -x.cos())
    }

    #[inline]
    fn sinh(self) -> Self {
        let x = self.re();
        self.chain(x.sinh(), x.cosh(), x.sinh())
    }

    #[inline]
    fn cosh(self) -> Self {
        let x = self.re();
        self.chain(x.cosh(), x.sinh(), x.cosh())
    }

    #[inline]
    fn tanh(self) -> Self {
        let x = self.re();
        let t = x.tanh();
        let s2 = T::one() - t * t;
        self.chain(t, s2, -(t + t) * s2)
    }

    #[inline]
    fn exp(self) -> Self {
        let e = self.re().exp();
        self.chain(e, e, e)
    }

    #[inline]
    fn sqrt(self) -> Self {
        let x = self.re();
        let r = x.sqrt();
        let half = lit::<T>(0.5);
        self.chain(r, half / r, -half * half / (r * x))
    }

    #[inline]
    fn recip(self) -> Self {
        let x = self.re();
        let r = x.recip();
        self.chain(r, -r * r, (r + r) * r * r)
    }

    #[inline]
    fn powi(self, n: i32) -> Self {
        let x = self.re();
        let nf = T::from_i32(n).unwrap();
        let n1 = T::from_i32(n - 1).unwrap();
        self.chain(x.powi(n), nf * x.powi(n - 1), nf * n1 * x.powi(n - 2))
    }

    /// `sinh(x)/x`, with a series branch near zero.
    fn sinhc(self) -> Self {
        if self.re().abs() < lit(1e-3) {
            let x2 = self * self;
            let c = |k: f64| lit::<T>(k);
            // 1 + x²/6 + x⁴/120 + x⁶/5040
            ((x2 * c(1.0 / 5040.0) + c(1.0 / 120.0)) * x2 + c(1.0 / 6.0)) * x2 + c(1.0)
        } else {
            self.sinh() / self
        }
    }

    /// `(sinh(x) − x)/x²`, with a series branch near zero.
    fn sinh_defect(self) -> Self {
        if self.re().abs() < lit(1e-3) {
            let x2 = self * self;
            let c = |k: f64| lit::<T>(k);
            // x/6 + x³/120 + x⁵/5040 + x⁷/362880
            (((x2 * c(1.0 / 362880.0) + c(1.0 / 5040.0)) * x2 + c(1.0 / 120.0)) * x2
                + c(1.0 / 6.0))
                * self
        } else {
            (self.sinh() - self) / (self * self)
        }
    }
}

impl<T: Real> Scalar<T> for T {
    #[inline]
    fn from_real(x: T) -> Self {
        x
    }
    #[inline]
    fn re(self) -> T {
        self
    }
    #[inline]
    fn chain(self, f: T, _df: T, _d2f: T) -> Self {
        f
    }
    #[inline]
    fn sin(self) -> Self {
        Float::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        Float::cos(self)
    }
    #[inline]
    fn sinh(self) -> Self {
        Float::sinh(self)
    }
    #[inline]
    fn cosh(self) -> Self {
        Float::cosh(self)
    }
    #[inline]
    fn tanh(self) -> Self {
        Float::tanh(self)
    }
    #[inline]
    fn exp(self) -> Self {
        Float::exp(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    #[inline]
    fn recip(self) -> Self {
        Float::recip(self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        Float::powi(self, n)
    }
}

/// First-order forward-mode number in two variables.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual<T> {
    pub re: T,
    pub grad: [T; 2],
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, grad: [T; 2]) -> Self {
        Self { re, grad }
    }

    pub fn constant(re: T) -> Self {
        Self::new(re, [T::zero(); 2])
    }

    /// The independent variable with index `i` (0 = u, 1 = v).
    pub fn variable(re: T, i: usize) -> Self {
        let mut grad = [T::zero(); 2];
        grad[i] = T::one();
        Self::new(re, grad)
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, [self.grad[0] + o.grad[0], self.grad[1] + o.grad[1]])
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, [self.grad[0] - o.grad[0], self.grad[1] - o.grad[1]])
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re,
            [
                self.re * o.grad[0] + o.re * self.grad[0],
                self.re * o.grad[1] + o.re * self.grad[1],
            ],
        )
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self * Scalar::recip(o)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, [-self.grad[0], -self.grad[1]])
    }
}

impl<T: Real> Add<T> for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: T) -> Self {
        Self::new(self.re + o, self.grad)
    }
}

impl<T: Real> Sub<T> for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: T) -> Self {
        Self::new(self.re - o, self.grad)
    }
}

impl<T: Real> Mul<T> for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: T) -> Self {
        Self::new(self.re * o, [self.grad[0] * o, self.grad[1] * o])
    }
}

impl<T: Real> Div<T> for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: T) -> Self {
        Self::new(self.re / o, [self.grad[0] / o, self.grad[1] / o])
    }
}

impl<T: Real> Scalar<T> for Dual<T> {
    #[inline]
    fn from_real(x: T) -> Self {
        Self::constant(x)
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn chain(self, f: T, df: T, _d2f: T) -> Self {
        Self::new(f, [df * self.grad[0], df * self.grad[1]])
    }
}

/// Second-order forward-mode number in two variables.
///
/// `hess` stores `[∂uu, ∂uv, ∂vv]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet2<T> {
    pub re: T,
    pub grad: [T; 2],
    pub hess: [T; 3],
}

impl<T: Real> Jet2<T> {
    pub fn new(re: T, grad: [T; 2], hess: [T; 3]) -> Self {
        Self { re, grad, hess }
    }

    pub fn constant(re: T) -> Self {
        Self::new(re, [T::zero(); 2], [T::zero(); 3])
    }

    /// The independent variable with index `i` (0 = u, 1 = v).
    pub fn variable(re: T, i: usize) -> Self {
        let mut grad = [T::zero(); 2];
        grad[i] = T::one();
        Self::new(re, grad, [T::zero(); 3])
    }
}

impl<T: Real> Add for Jet2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(
            self.re + o.re,
            [self.grad[0] + o.grad[0], self.grad[1] + o.grad[1]],
            [self.hess[0] + o.hess[0], self.hess[1] + o.hess[1], self.hess[2] + o.hess[2]],
        )
    }
}

impl<T: Real> Sub for Jet2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Mul for Jet2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.re * b.re,
            [a.re * b.grad[0] + b.re * a.grad[0], a.re * b.grad[1] + b.re * a.grad[1]],
            [
                a.re * b.hess[0] + b.re * a.hess[0] + (a.grad[0] * b.grad[0] + a.grad[0] * b.grad[0]),
                a.re * b.hess[1] + b.re * a.hess[1] + a.grad[0] * b.grad[1] + a.grad[1] * b.grad[0],
                a.re * b.hess[2] + b.re * a.hess[2] + (a.grad[1] * b.grad[1] + a.grad[1] * b.grad[1]),
            ],
        )
    }
}

impl<T: Real> Div for Jet2<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self * Scalar::recip(o)
    }
}

impl<T: Real> Neg for Jet2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(
            -self.re,
            [-self.grad[0], -self.grad[1]],
            [-self.hess[0], -self.hess[1], -self.hess[2]],
        )
    }
}

impl<T: Real> Add<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: T) -> Self {
        Self::new(self.re + o, self.grad, self.hess)
    }
}

impl<T: Real> Sub<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: T) -> Self {
        Self::new(self.re - o, self.grad, self.hess)
    }
}

impl<T: Real> Mul<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: T) -> Self {
        Self::new(
            self.re * o,
            [self.grad[0] * o, self.grad[1] * o],
            [self.hess[0] * o, self.hess[1] * o, self.hess[2] * o],
        )
    }
}

impl<T: Real> Div<T> for Jet2<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: T) -> Self {
        self * o.recip()
    }
}

impl<T: Real> Scalar<T> for Jet2<T> {
    #[inline]
    fn from_real(x: T) -> Self {
        Self::constant(x)
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn chain(self, f: T, df: T, d2f: T) -> Self {
        let g = self.grad;
        Self::new(
            f,
            [df * g[0], df * g[1]],
            [
                df * self.hess[0] + d2f * g[0] * g[0],
                df * self.hess[1] + d2f * g[0] * g[1],
                df * self.hess[2] + d2f * g[1] * g[1],
            ],
        )
    }
}
