//! Fourth-order central difference stencils.
//!
//! All stencils take a fallible sampling closure returning a fixed-size
//! array, so vector- and matrix-valued fields share one implementation.

use crate::error::Result;
use crate::scalar::{lit, Real};

/// Default relative step for ambient (coordinate) differences.
pub const AMBIENT_STEP: f64 = 1e-3;

/// Default step for differences taken along surface parameters.
pub const SURFACE_STEP: f64 = 1e-3;

/// Step scaled to the magnitude of the coordinate.
pub fn scaled_step<T: Real>(x: T, rel: f64) -> T {
    lit::<T>(rel) * T::one().max(x.abs())
}

fn combine<T: Real, const N: usize>(terms: &[(T, [T; N])], scale: T) -> [T; N] {
    std::array::from_fn(|i| terms.iter().fold(T::zero(), |acc, (w, f)| acc + *w * f[i]) / scale)
}

/// First derivative, `(f(x−2h) − 8f(x−h) + 8f(x+h) − f(x+2h)) / 12h`.
pub fn d1<T: Real, const N: usize, F>(f: F, x: T, h: T) -> Result<[T; N]>
where
    F: Fn(T) -> Result<[T; N]>,
{
    let two = lit::<T>(2.0);
    let terms = [
        (T::one(), f(x - two * h)?),
        (lit(-8.0), f(x - h)?),
        (lit(8.0), f(x + h)?),
        (-T::one(), f(x + two * h)?),
    ];
    Ok(combine(&terms, lit::<T>(12.0) * h))
}

/// Second derivative, `(−f(x−2h) + 16f(x−h) − 30f(x) + 16f(x+h) − f(x+2h)) / 12h²`.
pub fn d2<T: Real, const N: usize, F>(f: F, x: T, h: T) -> Result<[T; N]>
where
    F: Fn(T) -> Result<[T; N]>,
{
    let two = lit::<T>(2.0);
    let terms = [
        (-T::one(), f(x - two * h)?),
        (lit(16.0), f(x - h)?),
        (lit(-30.0), f(x)?),
        (lit(16.0), f(x + h)?),
        (-T::one(), f(x + two * h)?),
    ];
    Ok(combine(&terms, lit::<T>(12.0) * h * h))
}

/// Directional derivative of a field on the plane along `dir` at `(u, v)`.
pub fn directional<T: Real, const N: usize, F>(f: F, u: T, v: T, dir: [T; 2], h: T) -> Result<[T; N]>
where
    F: Fn(T, T) -> Result<[T; N]>,
{
    d1(|t| f(u + t * dir[0], v + t * dir[1]), T::zero(), h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quartics() {
        let f = |x: f64| Ok([x.powi(4) - 3.0 * x.powi(3) + x, 2.0 * x * x]);
        let g = d1(f, 0.7, 0.1).unwrap();
        assert!((g[0] - (4.0 * 0.343 - 9.0 * 0.49 + 1.0)).abs() < 1e-12);
        assert!((g[1] - 2.8).abs() < 1e-13);
        let h = d2(f, 0.7, 0.1).unwrap();
        assert!((h[0] - (12.0 * 0.49 - 18.0 * 0.7)).abs() < 1e-10);
        assert!((h[1] - 4.0).abs() < 1e-11);
    }

    #[test]
    fn directional_derivative_of_plane_field() {
        let f = |u: f64, v: f64| Ok([(u * v).sin()]);
        let d = directional(f, 0.2, 0.5, [1.0, -2.0], 1e-3).unwrap();
        let exact = (0.1f64).cos() * (0.5 - 2.0 * 0.2);
        assert!((d[0] - exact).abs() < 1e-11);
    }
}
