use helix_h3::ambient::coords::{christoffel_coords, connection_numeric};
use helix_h3::ambient::{
    connection_frame, curvature, frame_at, metric_eval, sectional_curvature, wedge, FrameIndex,
};
use helix_h3::{Point64, Sign, SpaceParams64, TangentVector64, V3};
use proptest::prelude::*;

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Minus), Just(Sign::Plus)]
}

fn coord() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    [coord(), coord(), coord()]
}

fn tv(p: Point64, c: [f64; 3]) -> TangentVector64 {
    TangentVector64::new(p, V3(c))
}

proptest! {
    #[test]
    fn metric_is_symmetric_and_bilinear(delta in sign(), tau in 0.1..2.0f64, p in vec3(),
                                       a in vec3(), b in vec3(), c in vec3(), s in -3.0..3.0f64) {
        let prm = SpaceParams64::heisenberg(delta, tau);
        let p = Point64::new(p[0], p[1], p[2]);
        let g = |x: [f64; 3], y: [f64; 3]| metric_eval(&prm, &p, &tv(p, x), &tv(p, y)).unwrap();
        prop_assert!((g(a, b) - g(b, a)).abs() < 1e-12);
        let sum = [a[0] * s + c[0], a[1] * s + c[1], a[2] * s + c[2]];
        let lin = s * g(a, b) + g(c, b);
        prop_assert!((g(sum, b) - lin).abs() <= 1e-10 * (1.0 + lin.abs()));
    }

    #[test]
    fn wedge_is_antisymmetric(delta in sign(), tau in 0.1..2.0f64, p in vec3(), a in vec3(), b in vec3()) {
        let prm = SpaceParams64::heisenberg(delta, tau);
        let p = Point64::new(p[0], p[1], p[2]);
        let ab = wedge(&prm, &tv(p, a), &tv(p, b)).unwrap().components;
        let ba = wedge(&prm, &tv(p, b), &tv(p, a)).unwrap().components;
        prop_assert!((ab + ba).max_abs() < 1e-12);
        prop_assert!(wedge(&prm, &tv(p, a), &tv(p, a)).unwrap().components.max_abs() < 1e-12);
        // X∧Y is orthogonal to both factors
        let w = tv(p, ab.0);
        prop_assert!(metric_eval(&prm, &p, &w, &tv(p, a)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn curvature_antisymmetric_in_first_slots(delta in sign(), tau in 0.1..2.0f64, p in vec3(),
                                              a in vec3(), b in vec3(), c in vec3()) {
        let prm = SpaceParams64::heisenberg(delta, tau);
        let p = Point64::new(p[0], p[1], p[2]);
        let r1 = curvature(&prm, &tv(p, a), &tv(p, b), &tv(p, c)).unwrap().components;
        let r2 = curvature(&prm, &tv(p, b), &tv(p, a), &tv(p, c)).unwrap().components;
        prop_assert!((r1 + r2).max_abs() < 1e-9 * (1.0 + r1.max_abs()));
        prop_assert!(curvature(&prm, &tv(p, a), &tv(p, a), &tv(p, c)).unwrap().components.max_abs() < 1e-12);
    }

    #[test]
    fn sectional_curvature_ignores_rescaling(delta in sign(), tau in 0.1..2.0f64, p in vec3(),
                                             a in vec3(), b in vec3(), k in 0.5..4.0f64) {
        let prm = SpaceParams64::heisenberg(delta, tau);
        let p = Point64::new(p[0], p[1], p[2]);
        let (x, y) = (tv(p, a), tv(p, b));
        if let Ok(s) = sectional_curvature(&prm, &p, &x, &y) {
            let x2 = tv(p, [k * a[0], k * a[1], k * a[2]]);
            let s2 = sectional_curvature(&prm, &p, &x2, &y).unwrap();
            prop_assert!((s - s2).abs() <= 1e-9 * (1.0 + s.abs()));
        }
    }
}

#[test]
fn frame_examples() {
    let prm = SpaceParams64::heisenberg(Sign::Plus, 1.0);
    // Frame convention E₁ = ∂x − τy∂z, E₂ = ∂y + τx∂z, E₃ = ∂z.
    let f = frame_at(&prm, &Point64::new(0.0, 2.0, 0.0)).unwrap();
    assert_eq!(f.e1.components, V3([1.0, 0.0, -2.0]));
    assert_eq!(f.e3.components, V3([0.0, 0.0, 1.0]));
    let f = frame_at(&prm, &Point64::new(3.0, 0.0, 0.0)).unwrap();
    assert_eq!(f.e2.components, V3([0.0, 1.0, 3.0]));
}

#[test]
fn wedge_table() {
    let p = Point64::new(0.4, -0.3, 1.0);
    for delta in [Sign::Minus, Sign::Plus] {
        let prm = SpaceParams64::heisenberg(delta, 0.8);
        let f = frame_at(&prm, &p).unwrap();
        let d = prm.delta();
        let e12 = wedge(&prm, &f.e1, &f.e2).unwrap().components;
        assert!((e12 - f.e3.components * d).max_abs() < 1e-15);
        let e23 = wedge(&prm, &f.e2, &f.e3).unwrap().components;
        assert!((e23 - f.e1.components).max_abs() < 1e-15);
        let e13 = wedge(&prm, &f.e1, &f.e3).unwrap().components;
        assert!((e13 - f.e2.components * d).max_abs() < 1e-15);
    }
}

#[test]
fn connection_examples() {
    use FrameIndex::*;
    let prm = SpaceParams64::heisenberg(Sign::Minus, 1.5);
    assert_eq!(connection_frame(&prm, E3, E2), V3([-1.5, 0.0, 0.0]));
    assert_eq!(connection_frame(&prm, E1, E1), V3([0.0; 3]));
    assert_eq!(connection_frame(&prm, E1, E3), V3([0.0, 1.5, 0.0]));
}

#[test]
fn flat_christoffels_and_symmetry() {
    let flat = SpaceParams64 { delta: Sign::Plus, tau: 0.0, kappa: 0.0 };
    let p = Point64::new(0.3, -1.1, 2.0);
    let g = christoffel_coords(&flat, &p).unwrap();
    assert!(g.iter().flatten().flatten().all(|x| x.abs() < 1e-12));

    let prm = SpaceParams64::with_kappa(Sign::Minus, 0.7, 0.3);
    let g = christoffel_coords(&prm, &p).unwrap();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert!((g[k][i][j] - g[k][j][i]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn nabla_e2_e3_at_random_points() {
    use rand::{Rng, SeedableRng};
    let prm = SpaceParams64::heisenberg(Sign::Plus, 1.0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let p = Point64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = connection_numeric(&prm, &p, FrameIndex::E2, FrameIndex::E3).unwrap();
        assert!((n - V3([1.0, 0.0, 0.0])).max_abs() < 1e-7);
    }
}

#[test]
fn curvature_examples() {
    let p = Point64::new(0.1, 0.2, 0.3);
    for delta in [Sign::Minus, Sign::Plus] {
        let prm = SpaceParams64::heisenberg(delta, 2.0);
        let f = frame_at(&prm, &p).unwrap();
        let r = curvature(&prm, &f.e1, &f.e2, &f.e1).unwrap().components;
        assert!((r - f.e2.components * -12.0).max_abs() < 1e-12);
        let r = curvature(&prm, &f.e2, &f.e3, &f.e2).unwrap().components;
        assert!((r - f.e3.components * (-4.0 * prm.delta())).max_abs() < 1e-12);
    }
}
