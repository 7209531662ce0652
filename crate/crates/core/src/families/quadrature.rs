//! Adaptive Simpson quadrature and cubic Hermite interpolation.

use crate::error::{GeomError, Result};
use crate::scalar::{lit, Real};

const MAX_DEPTH: u32 = 48;

/// `∫ₐᵇ f` to absolute tolerance `tol`, by adaptive Simpson with Richardson correction.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<T> {
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * lit::<T>(0.5);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / lit::<T>(6.0) * (fa + lit::<T>(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> Result<T> {
    let half = lit::<T>(0.5);
    let m = (a + b) * half;
    let (lm, rm) = ((a + m) * half, (m + b) * half);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let fifteen = lit::<T>(15.0);
    if delta.abs() <= fifteen * tol {
        return Ok(left + right + delta / fifteen);
    }
    if depth == 0 || !delta.is_finite() {
        return Err(GeomError::QuadratureFailure {
            a: a.to_f64().unwrap_or(f64::NAN),
            b: b.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(refine(f, a, m, fa, flm, fm, left, tol * half, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, tol * half, depth - 1)?)
}

/// Cubic Hermite interpolant on `[a, a+h]` from end values `y` and slopes `m`,
/// evaluated at `a + t·h`.
pub fn hermite<T: Real>(t: T, h: T, y: [T; 2], m: [T; 2]) -> T {
    let one = T::one();
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = two * t3 - three * t2 + one;
    let h10 = t3 - two * t2 + t;
    let h01 = three * t2 - two * t3;
    let h11 = t3 - t2;
    h00 * y[0] + h10 * h * m[0] + h01 * y[1] + h11 * h * m[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let i = adaptive_simpson(|x: f64| x.cosh(), 0.0, 2.0, 1e-12).unwrap();
        assert!((i - 2.0f64.sinh()).abs() < 1e-12);
        let i = adaptive_simpson(|x: f64| (3.0 * x).sin(), -1.0, 0.5, 1e-12).unwrap();
        let exact = (-(1.5f64).cos() + 3.0f64.cos()) / 3.0;
        assert!((i - exact).abs() < 1e-12);
    }

    #[test]
    fn reports_failure_on_singular_integrand() {
        let r = adaptive_simpson(|x: f64| 1.0 / x, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(GeomError::QuadratureFailure { .. })));
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let p = |x: f64| 2.0 * x * x * x - x + 0.5;
        let dp = |x: f64| 6.0 * x * x - 1.0;
        let (a, h) = (0.3, 0.2);
        let y = hermite(0.37, h, [p(a), p(a + h)], [dp(a), dp(a + h)]);
        assert!((y - p(a + 0.37 * h)).abs() < 1e-15);
    }
}
