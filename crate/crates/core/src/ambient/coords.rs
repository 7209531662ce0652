//! Connection and curvature from finite differences of the coordinate metric.
//!
//! Nothing here uses the frame tables; this is the independent route the
//! verification suites compare against.

use crate::error::{GeomError, Result};
use crate::fd::{d1, scaled_step, AMBIENT_STEP};
use crate::linalg::{inv3, V3};
use crate::scalar::{lit, Real};

use super::{
    coordinate_metric, frame_at, frame_components, metric_eval, FrameIndex, Point, SpaceParams,
    TangentVector,
};

/// `gamma[k][i][j] = Γᵏᵢⱼ` with `∇_{∂i}∂j = Γᵏᵢⱼ ∂k`.
pub type Christoffel<T> = [[[T; 3]; 3]; 3];

/// `r[l][a][b][c]` is the `∂l` component of `R(∂a, ∂b)∂c`.
pub type Riemann<T> = [[[[T; 3]; 3]; 3]; 3];

fn shifted<T: Real>(p: &Point<T>, axis: usize, t: T) -> Point<T> {
    let mut c = p.coords().0;
    c[axis] = c[axis] + t;
    Point::new(c[0], c[1], c[2])
}

fn axis_step<T: Real>(p: &Point<T>, axis: usize) -> T {
    scaled_step(p.coords()[axis], AMBIENT_STEP)
}

fn metric_flat<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<[T; 9]> {
    let g = coordinate_metric(params, p)?;
    Ok(std::array::from_fn(|n| g[n / 3][n % 3]))
}

/// Christoffel symbols at `p` from fourth-order differences of `g`.
pub fn christoffel_coords<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<Christoffel<T>> {
    let g = coordinate_metric(params, p)?;
    let ginv = inv3(&g)
        .filter(|_| crate::linalg::det3(&g).abs() > lit(1e-12))
        .ok_or_else(|| GeomError::SingularMetric(crate::linalg::det3(&g).to_f64().unwrap_or(f64::NAN)))?;
    // dg[a][i][j] = ∂a g_ij
    let mut dg = [[[T::zero(); 3]; 3]; 3];
    for (a, slot) in dg.iter_mut().enumerate() {
        let flat = d1(|t| metric_flat(params, &shifted(p, a, t)), T::zero(), axis_step(p, a))?;
        for n in 0..9 {
            slot[n / 3][n % 3] = flat[n];
        }
    }
    let half = lit::<T>(0.5);
    let mut gamma = [[[T::zero(); 3]; 3]; 3];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = T::zero();
                for l in 0..3 {
                    s = s + ginv[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                }
                gk[i][j] = half * s;
            }
        }
    }
    Ok(gamma)
}

fn christoffel_flat<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<[T; 27]> {
    let g = christoffel_coords(params, p)?;
    Ok(std::array::from_fn(|n| g[n / 9][(n / 3) % 3][n % 3]))
}

/// Riemann tensor at `p`, differentiating the finite-difference Christoffels once more.
pub fn riemann_coords<T: Real>(params: &SpaceParams<T>, p: &Point<T>) -> Result<Riemann<T>> {
    let gamma = christoffel_coords(params, p)?;
    // dgamma[a][l][b][c] = ∂a Γˡ_bc
    let mut dgamma = [[[[T::zero(); 3]; 3]; 3]; 3];
    for (a, slot) in dgamma.iter_mut().enumerate() {
        let flat = d1(|t| christoffel_flat(params, &shifted(p, a, t)), T::zero(), axis_step(p, a))?;
        for n in 0..27 {
            slot[n / 9][(n / 3) % 3][n % 3] = flat[n];
        }
    }
    let mut r = [[[[T::zero(); 3]; 3]; 3]; 3];
    for l in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut s = dgamma[a][l][b][c] - dgamma[b][l][a][c];
                    for m in 0..3 {
                        s = s + gamma[l][a][m] * gamma[m][b][c] - gamma[l][b][m] * gamma[m][a][c];
                    }
                    r[l][a][b][c] = s;
                }
            }
        }
    }
    Ok(r)
}

/// `∇_X Y` at `p` in coordinate components, for a vector field `Y` given as a
/// closure returning coordinate components.
pub fn covariant_derivative_numeric<T: Real, F>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    x: V3<T>,
    field: F,
) -> Result<V3<T>>
where
    F: Fn(&Point<T>) -> Result<V3<T>>,
{
    let gamma = christoffel_coords(params, p)?;
    let y = field(p)?;
    let h = scaled_step(p.coords().max_abs(), AMBIENT_STEP) / T::one().max(x.max_abs());
    let dy = d1(
        |t| field(&Point::from_coords(p.coords() + x * t)).map(|v| v.0),
        T::zero(),
        h,
    )?;
    Ok(V3(std::array::from_fn(|k| {
        let mut s = dy[k];
        for i in 0..3 {
            for j in 0..3 {
                s = s + gamma[k][i][j] * x[i] * y[j];
            }
        }
        s
    })))
}

fn frame_field<T: Real>(params: &SpaceParams<T>, i: FrameIndex) -> impl Fn(&Point<T>) -> Result<V3<T>> + '_ {
    move |q: &Point<T>| Ok(frame_at(params, q)?.get(i).components)
}

/// Frame components of `∇_{E_i}E_j` at `p`, via finite-difference Christoffels.
pub fn connection_numeric<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    i: FrameIndex,
    j: FrameIndex,
) -> Result<V3<T>> {
    let x = frame_at(params, p)?.get(i).components;
    let v = covariant_derivative_numeric(params, p, x, frame_field(params, j))?;
    frame_components(params, &TangentVector::new(*p, v))
}

/// Frame components of `[E_i, E_j]` at `p`, from directional derivatives of
/// the frame fields in coordinates.
pub fn bracket_numeric<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    i: FrameIndex,
    j: FrameIndex,
) -> Result<V3<T>> {
    let f = frame_at(params, p)?;
    let (xi, xj) = (f.get(i).components, f.get(j).components);
    let h = scaled_step(p.coords().max_abs(), AMBIENT_STEP);
    let along = |dir: V3<T>, field: FrameIndex| {
        let step = h / T::one().max(dir.max_abs());
        d1(
            |t| Ok(frame_at(params, &Point::from_coords(p.coords() + dir * t))?.get(field).components.0),
            T::zero(),
            step,
        )
    };
    let a = along(xi, j)?;
    let b = along(xj, i)?;
    let v = V3(std::array::from_fn(|k| a[k] - b[k]));
    frame_components(params, &TangentVector::new(*p, v))
}

/// `R(X,Y)Z` at `p` from the finite-difference Riemann tensor, in coordinate components.
pub fn curvature_numeric<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    x: V3<T>,
    y: V3<T>,
    z: V3<T>,
) -> Result<V3<T>> {
    let r = riemann_coords(params, p)?;
    Ok(V3(std::array::from_fn(|l| {
        let mut s = T::zero();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    s = s + r[l][a][b][c] * x[a] * y[b] * z[c];
                }
            }
        }
        s
    })))
}

/// Sectional curvature from the finite-difference Riemann tensor. Works for any κ.
pub fn sectional_curvature_numeric<T: Real>(
    params: &SpaceParams<T>,
    p: &Point<T>,
    x: &TangentVector<T>,
    y: &TangentVector<T>,
) -> Result<T> {
    if x.base != *p || y.base != *p {
        return Err(GeomError::BaseMismatch);
    }
    let g = |a: &TangentVector<T>, b: &TangentVector<T>| metric_eval(params, p, a, b);
    let q = g(x, x)? * g(y, y)? - g(x, y)? * g(x, y)?;
    let scale = x.components.dot(x.components) * y.components.dot(y.components);
    if !(q.abs() > lit::<T>(1e-10) * scale) {
        return Err(GeomError::DegeneratePlane(q.to_f64().unwrap_or(f64::NAN)));
    }
    let r = curvature_numeric(params, p, x.components, y.components, y.components)?;
    Ok(g(&TangentVector::new(*p, r), x)? / q)
}

#[cfg(test)]
mod tests {
    use super::super::{connection_frame, curvature_frame, Sign};
    use super::*;

    #[test]
    fn numeric_connection_matches_table() {
        let p = Point::new(0.7, -1.2, 0.4);
        for delta in [Sign::Minus, Sign::Plus] {
            let prm = SpaceParams::heisenberg(delta, 0.9);
            for i in FrameIndex::ALL {
                for j in FrameIndex::ALL {
                    let n = connection_numeric(&prm, &p, i, j).unwrap();
                    let e = connection_frame(&prm, i, j);
                    assert!((n - e).max_abs() < 1e-8, "{i:?}{j:?}: {n:?} vs {e:?}");
                }
            }
        }
    }

    #[test]
    fn numeric_bracket() {
        let prm = SpaceParams::heisenberg(Sign::Plus, 1.5);
        let p = Point::new(2.0, 1.0, -3.0);
        let b = bracket_numeric(&prm, &p, FrameIndex::E1, FrameIndex::E2).unwrap();
        assert!((b - V3([0.0, 0.0, 3.0])).max_abs() < 1e-10);
        let b = bracket_numeric(&prm, &p, FrameIndex::E2, FrameIndex::E3).unwrap();
        assert!(b.max_abs() < 1e-10);
    }

    #[test]
    fn numeric_curvature_matches_tensor() {
        let p = Point::new(-0.3, 0.5, 1.0);
        for delta in [Sign::Minus, Sign::Plus] {
            let prm = SpaceParams::heisenberg(delta, 1.2);
            let f = frame_at(&prm, &p).unwrap();
            for i in FrameIndex::ALL {
                for j in FrameIndex::ALL {
                    for k in FrameIndex::ALL {
                        let c = curvature_numeric(
                            &prm,
                            &p,
                            f.get(i).components,
                            f.get(j).components,
                            f.get(k).components,
                        )
                        .unwrap();
                        let n = frame_components(&prm, &TangentVector::new(p, c)).unwrap();
                        let e = curvature_frame(&prm, i.unit(), j.unit(), k.unit());
                        assert!((n - e).max_abs() < 1e-6, "{i:?}{j:?}{k:?}: {n:?} vs {e:?}");
                    }
                }
            }
        }
    }
}
