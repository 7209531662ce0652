//! Ambient checks: closed-form frame tables against each other and against
//! the finite-difference coordinate path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ambient::coords::{
    bracket_numeric, christoffel_coords, connection_numeric, covariant_derivative_numeric, riemann_coords,
    sectional_curvature_numeric,
};
use crate::ambient::{
    connection_frame, coordinate_metric, curvature_frame, curvature_table, frame_at, metric_eval,
    to_frame, wedge_frame, FrameIndex, Point, SpaceParams, TangentVector,
};
use crate::error::{GeomError, Result};
use crate::linalg::V3;

use super::{max_of, ResidualSuite, Tolerances};

pub const RANDOM_POINTS: usize = 100;
pub const RANDOM_TRIPLES: usize = 200;
pub const NABLA_E3_SAMPLES: usize = 50;
pub const CURVATURE_SAMPLES: usize = 20;

fn random_v3(rng: &mut ChaCha8Rng, r: f64) -> V3<f64> {
    V3([rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)])
}

fn random_point(rng: &mut ChaCha8Rng, r: f64) -> Point<f64> {
    Point::from_coords(random_v3(rng, r))
}

/// Frame components of `∇_{E_i}E_j` from the Koszul formula and the bracket
/// table `[E₁,E₂] = 2τE₃`, `[E₁,E₃] = [E₂,E₃] = 0`.
pub fn koszul_connection(params: &SpaceParams<f64>, i: FrameIndex, j: FrameIndex) -> V3<f64> {
    let eta = params.frame_metric();
    let bracket = |a: usize, b: usize| -> V3<f64> {
        match (a, b) {
            (0, 1) => V3([0.0, 0.0, 2.0 * params.tau]),
            (1, 0) => V3([0.0, 0.0, -2.0 * params.tau]),
            _ => V3::zero(),
        }
    };
    let g = |a: V3<f64>, k: usize| a[k] * eta[k];
    let (a, b) = (i.index(), j.index());
    V3(std::array::from_fn(|k| {
        0.5 * (g(bracket(a, b), k) - g(bracket(b, k), a) + g(bracket(k, a), b)) / eta[k]
    }))
}

/// `[E_i, E_j]` from the bracket table.
fn bracket_table(params: &SpaceParams<f64>, i: FrameIndex, j: FrameIndex) -> V3<f64> {
    match (i.index(), j.index()) {
        (0, 1) => V3([0.0, 0.0, 2.0 * params.tau]),
        (1, 0) => V3([0.0, 0.0, -2.0 * params.tau]),
        _ => V3::zero(),
    }
}

fn frame_residuals(params: &SpaceParams<f64>, p: &Point<f64>) -> Result<f64> {
    let f = frame_at(params, p)?;
    let eta = params.frame_metric();
    let mut r: f64 = 0.0;
    for i in FrameIndex::ALL {
        for j in FrameIndex::ALL {
            let g = metric_eval(params, p, &f.get(i), &f.get(j))?;
            let want = if i == j { eta[i.index()] } else { 0.0 };
            r = r.max((g - want).abs());
        }
    }
    Ok(r)
}

fn coordinate_to_frame(p: &Point<f64>, tau: f64, w: V3<f64>) -> V3<f64> {
    to_frame(tau, p.x, p.y, w)
}

/// Runs every ambient check for `params` (κ is ignored; the κ = −4τ² and τ = 0
/// spaces are derived from `δ` and `τ`).
pub fn check_ambient(params: &SpaceParams<f64>, seed: u64, tols: &Tolerances) -> Result<ResidualSuite> {
    let prm = SpaceParams::heisenberg(params.delta, params.tau);
    prm.require_nonzero_tau()?;
    let tau = prm.tau;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = ResidualSuite::new("ambient", seed);
    let points: Vec<Point<f64>> = (0..RANDOM_POINTS).map(|_| random_point(&mut rng, 1.5)).collect();

    let mut frame = Vec::new();
    let mut bracket = Vec::new();
    let mut conn = Vec::new();
    let mut curv = Vec::new();
    let mut killing = Vec::new();
    for p in &points {
        frame.push(frame_residuals(&prm, p)?);
        for i in FrameIndex::ALL {
            for j in FrameIndex::ALL {
                bracket.push((bracket_numeric(&prm, p, i, j)? - bracket_table(&prm, i, j)).max_abs());
                conn.push((connection_numeric(&prm, p, i, j)? - connection_frame(&prm, i, j)).max_abs());
            }
        }
        let r = riemann_coords(&prm, p)?;
        let f = frame_at(&prm, p)?;
        for i in FrameIndex::ALL {
            for j in FrameIndex::ALL {
                for k in FrameIndex::ALL {
                    let (x, y, z) = (f.get(i).components, f.get(j).components, f.get(k).components);
                    let coords = V3(std::array::from_fn(|l| {
                        let mut s = 0.0;
                        for a in 0..3 {
                            for b in 0..3 {
                                for c in 0..3 {
                                    s += r[l][a][b][c] * x[a] * y[b] * z[c];
                                }
                            }
                        }
                        s
                    }));
                    let fd = coordinate_to_frame(p, tau, coords);
                    curv.push((fd - curvature_table(&prm, i, j, k)).max_abs());
                }
            }
        }
        let shifted = Point::new(p.x, p.y, p.z + rng.gen_range(-10.0..10.0));
        let (g0, g1) = (coordinate_metric(&prm, p)?, coordinate_metric(&prm, &shifted)?);
        killing.push(max_of((0..9).map(|n| (g0[n / 3][n % 3] - g1[n / 3][n % 3]).abs())));
    }
    suite.record(tols, "frame_orthonormality", max_of(frame));
    suite.record(tols, "bracket", max_of(bracket));
    suite.record(tols, "connection_fd", max_of(conn));
    suite.record(tols, "curvature_fd", max_of(curv));
    suite.record(tols, "killing_e3", max_of(killing));

    let mut closed = Vec::new();
    let mut table = Vec::new();
    for i in FrameIndex::ALL {
        for j in FrameIndex::ALL {
            closed.push((koszul_connection(&prm, i, j) - connection_frame(&prm, i, j)).max_abs());
            for k in FrameIndex::ALL {
                let t = curvature_frame(&prm, i.unit(), j.unit(), k.unit());
                table.push((t - curvature_table(&prm, i, j, k)).max_abs());
            }
        }
    }
    suite.record(tols, "connection_closed_form", max_of(closed));
    suite.record(tols, "curvature_closed_form", max_of(table));

    let mut random = Vec::new();
    for _ in 0..RANDOM_TRIPLES {
        let (x, y, z) = (random_v3(&mut rng, 1.0), random_v3(&mut rng, 1.0), random_v3(&mut rng, 1.0));
        let mut expanded = V3::zero();
        for i in FrameIndex::ALL {
            for j in FrameIndex::ALL {
                for k in FrameIndex::ALL {
                    let w = x[i.index()] * y[j.index()] * z[k.index()];
                    expanded = expanded + curvature_table(&prm, i, j, k) * w;
                }
            }
        }
        random.push((curvature_frame(&prm, x, y, z) - expanded).max_abs());
    }
    suite.record(tols, "curvature_random", max_of(random));

    let mut nabla = Vec::new();
    for _ in 0..NABLA_E3_SAMPLES {
        let p = random_point(&mut rng, 1.5);
        let x = random_v3(&mut rng, 1.0);
        let e3 = |q: &Point<f64>| Ok(frame_at(&prm, q)?.e3.components);
        let d = covariant_derivative_numeric(&prm, &p, x, e3)?;
        let lhs = coordinate_to_frame(&p, tau, d);
        let xf = coordinate_to_frame(&p, tau, x);
        let rhs = wedge_frame::<f64, f64>(prm.delta, xf, FrameIndex::E3.unit()) * (prm.delta() * tau);
        nabla.push((lhs - rhs).max_abs());
    }
    suite.record(tols, "nabla_e3", max_of(nabla));

    let flat = SpaceParams { tau: 0.0, kappa: 0.0, delta: prm.delta };
    let mut mink = Vec::new();
    for p in points.iter().take(10) {
        let g = christoffel_coords(&flat, p)?;
        let r = riemann_coords(&flat, p)?;
        mink.push(max_of(g.iter().flatten().flatten().map(|x| x.abs())));
        mink.push(max_of(r.iter().flatten().flatten().flatten().map(|x| x.abs())));
    }
    suite.record(tols, "minkowski", max_of(mink));

    let (spread, value) = constant_curvature_spread(&prm, &mut rng)?;
    suite.record(tols, "constant_curvature", spread).value = Some(value);
    Ok(suite.finish())
}

/// Spread and mean of sectional curvatures of `M(−4τ², τ)` over random
/// points and nondegenerate planes.
fn constant_curvature_spread(prm: &SpaceParams<f64>, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let tau = prm.tau;
    let space = SpaceParams::with_kappa(prm.delta, tau, -4.0 * tau * tau);
    let r = 0.3 / tau.abs().max(1.0);
    let mut values = Vec::with_capacity(CURVATURE_SAMPLES);
    let mut attempts = 0;
    while values.len() < CURVATURE_SAMPLES {
        attempts += 1;
        if attempts > 100 * CURVATURE_SAMPLES {
            return Err(GeomError::DegeneratePlane(0.0));
        }
        let p = random_point(rng, r);
        let (x, y) = (TangentVector::new(p, random_v3(rng, 1.0)), TangentVector::new(p, random_v3(rng, 1.0)));
        let g = |a: &TangentVector<f64>, b: &TangentVector<f64>| metric_eval(&space, &p, a, b);
        let q = g(&x, &x)? * g(&y, &y)? - g(&x, &y)?.powi(2);
        // stay clear of nearly null planes, where the quotient amplifies noise
        if q.abs() < 0.05 * x.components.dot(x.components) * y.components.dot(y.components) {
            continue;
        }
        values.push(sectional_curvature_numeric(&space, &p, &x, &y)?);
    }
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(*v), h.max(*v)));
    Ok((hi - lo, values.iter().sum::<f64>() / values.len() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Sign;

    #[test]
    fn ambient_suite_passes() {
        for delta in [Sign::Minus, Sign::Plus] {
            for tau in [0.5, 1.0, 2.0] {
                let s = check_ambient(&SpaceParams::heisenberg(delta, tau), 3, &Tolerances::default()).unwrap();
                assert!(s.passed(), "{}", s.to_json());
                let k = s.check("constant_curvature").unwrap().value.unwrap();
                assert!((k + tau * tau).abs() < 1e-6, "{k}");
            }
        }
    }

    #[test]
    fn deterministic() {
        let prm = SpaceParams::heisenberg(Sign::Plus, 1.0);
        let a = check_ambient(&prm, 11, &Tolerances::default()).unwrap().to_json();
        let b = check_ambient(&prm, 11, &Tolerances::default()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
