//! Fixed-size vector and matrix helpers.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::scalar::{Real, Scalar};

/// A 3-vector of components in some basis (coordinate or frame).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct V3<S>(pub [S; 3]);

impl<S: Copy> V3<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Self([a, b, c])
    }

    pub fn map<R, F: Fn(S) -> R>(self, f: F) -> V3<R> {
        V3([f(self.0[0]), f(self.0[1]), f(self.0[2])])
    }
}

impl<S> Index<usize> for V3<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Copy + Add<Output = S>> Add for V3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<S: Copy + Sub<Output = S>> Sub for V3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<S: Copy + Neg<Output = S>> Neg for V3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl<S: Copy + Mul<Output = S>> Mul<S> for V3<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        Self([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }
}

impl<T: Real> V3<T> {
    pub fn zero() -> Self {
        Self([T::zero(); 3])
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> T {
        self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn dot(self, o: Self) -> T {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }
}

impl<S> V3<S> {
    /// Euclidean cross product of the component triples.
    pub fn cross<T: Real>(self, o: Self) -> Self
    where
        S: Scalar<T>,
    {
        let (a, b) = (self.0, o.0);
        Self([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// Multiplies each component by the matching real weight.
    pub fn scale_each<T: Real>(self, w: [T; 3]) -> Self
    where
        S: Scalar<T>,
    {
        Self([self.0[0] * w[0], self.0[1] * w[1], self.0[2] * w[2]])
    }

    pub fn scale<T: Real>(self, k: T) -> Self
    where
        S: Scalar<T>,
    {
        self.scale_each([k; 3])
    }

    /// Real parts.
    pub fn re<T: Real>(self) -> V3<T>
    where
        S: Scalar<T>,
    {
        V3([self.0[0].re(), self.0[1].re(), self.0[2].re()])
    }
}

/// 2×2 real matrix stored row-major, `m[row][col]`.
pub type M2<T> = [[T; 2]; 2];

pub fn det2<T: Real>(m: &M2<T>) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inv2<T: Real>(m: &M2<T>) -> Option<M2<T>> {
    let d = det2(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    Some([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

pub fn mul2<T: Real>(a: &M2<T>, b: &M2<T>) -> M2<T> {
    let mut r = [[T::zero(); 2]; 2];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

pub fn apply2<T: Real>(m: &M2<T>, x: [T; 2]) -> [T; 2] {
    [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
}

pub fn trace2<T: Real>(m: &M2<T>) -> T {
    m[0][0] + m[1][1]
}

/// 3×3 real matrix stored row-major.
pub type M3<T> = [[T; 3]; 3];

pub fn det3<T: Real>(m: &M3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inv3<T: Real>(m: &M3<T>) -> Option<M3<T>> {
    let d = det3(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    Some([
        [c(1, 2, 1, 2) / d, -c(0, 2, 1, 2) / d, c(0, 1, 1, 2) / d],
        [-c(1, 2, 0, 2) / d, c(0, 2, 0, 2) / d, -c(0, 1, 0, 2) / d],
        [c(1, 2, 0, 1) / d, -c(0, 2, 0, 1) / d, c(0, 1, 0, 1) / d],
    ])
}

pub fn apply3<T: Real>(m: &M3<T>, x: V3<T>) -> V3<T> {
    V3(std::array::from_fn(|i| m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2]))
}
