use std::sync::Arc;

use helix_h3::families::{make_cmc_cylinder, make_helix_surface, make_minimal_plane, Causal, EtaSpec, HelixProfile};
use helix_h3::surface::{
    angle_function, gaussian_curvature, induced_metric, local_geometry, mean_curvature, shape_operator,
    tangent_part_t, tangent_rotation_j, unit_normal, CurvatureMethod, Domain, Grid, JetSource, Pointwise,
    ShapeBasis, SurfacePatch,
};
use helix_h3::{GeomError, Sign, SpaceParams64, TangentVector64, V3};
use proptest::prelude::*;

fn dom() -> Domain<f64> {
    Domain::new(-1.0, 1.0, -1.0, 1.0).unwrap()
}

fn spacelike_helix(eta: EtaSpec<f64>) -> (HelixProfile<f64>, SurfacePatch<f64>) {
    let p = HelixProfile::new(Causal::Spacelike, 1f64.asinh(), 0.0, eta, 1.0);
    let s = make_helix_surface(&p, dom()).unwrap();
    (p, s)
}

fn timelike_helix() -> SurfacePatch<f64> {
    let p = HelixProfile::new(Causal::Timelike, std::f64::consts::FRAC_PI_4, 0.0, EtaSpec::linear(0.0, 1.0), 1.0);
    make_helix_surface(&p, dom()).unwrap()
}

#[test]
fn causal_character_and_t_norm() {
    let (_, s) = spacelike_helix(EtaSpec::constant(0.0));
    assert_eq!(induced_metric(&s, 0.2, 0.3).unwrap().epsilon, Sign::Minus);
    let g = local_geometry(&s, 0.2, 0.3).unwrap();
    assert!((g.t_norm() - 2.0).abs() < 1e-12);
    let t = timelike_helix();
    let g = local_geometry(&t, -0.4, 0.1).unwrap();
    assert_eq!(g.first.epsilon, Sign::Plus);
    assert!((g.t_norm() - 0.5).abs() < 1e-12);

    let prm = SpaceParams64::heisenberg(Sign::Minus, 1.0);
    let m = make_minimal_plane(prm, Causal::Timelike, 0.0, dom()).unwrap();
    assert_eq!(induced_metric(&m, 0.0, 0.0).unwrap().epsilon, Sign::Plus);
}

#[test]
fn normal_and_adapted_frame_match_closed_forms() {
    let (_, s) = spacelike_helix(EtaSpec::sinusoidal(0.3, 1.0, 0.0));
    let (sh, ch) = (1.0, 2f64.sqrt());
    for (u, v) in [(0.3, -0.2), (-0.7, 0.9)] {
        let g = local_geometry(&s, u, v).unwrap();
        let n = V3([ch * u.sinh(), ch * u.cosh(), -sh]);
        assert!((g.normal - n).max_abs() < 1e-12, "{:?}", g.normal);
        let jt = g.rotate(g.t_frame());
        assert!((jt - V3([ch * u.cosh(), ch * u.sinh(), 0.0])).max_abs() < 1e-12);
        assert!((angle_function(&s, u, v).unwrap() - 1.0).abs() < 1e-12);
    }
    let t = timelike_helix();
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let g = local_geometry(&t, 0.5, 0.5).unwrap();
    let jt = g.rotate(g.t_frame());
    assert!((jt - V3([c * 0.5f64.sinh(), c * 0.5f64.cosh(), 0.0])).max_abs() < 1e-12);
}

#[test]
fn minimal_plane_normal_and_t() {
    let prm = SpaceParams64::heisenberg(Sign::Minus, 1.0);
    let m = make_minimal_plane(prm, Causal::Timelike, 0.0, dom()).unwrap();
    let g = local_geometry(&m, 0.1, 0.2).unwrap();
    assert!((g.normal - V3([1.0, 0.0, 0.0])).max_abs() < 1e-15);
    assert_eq!(g.t_frame(), V3([0.0, 0.0, 1.0]));
    let t = tangent_part_t(&m, 0.1, 0.2).unwrap();
    assert_eq!(t.components, V3([0.0, 0.0, 1.0]));
    let n = unit_normal(&m, 0.1, 0.2).unwrap();
    assert!((n.components - V3([1.0, 0.0, 0.2])).max_abs() < 1e-15);
}

proptest! {
    #[test]
    fn j_squared_is_epsilon(u in -0.9..0.9f64, v in -0.9..0.9f64, a in -2.0..2.0f64, b in -2.0..2.0f64, timelike: bool) {
        let s = if timelike { timelike_helix() } else { spacelike_helix(EtaSpec::linear(0.1, 0.5)).1 };
        let g = local_geometry(&s, u, v).unwrap();
        let x = g.vector([a, b]);
        let p = g.point;
        let xc = TangentVector64::new(p, g.coords(x));
        let jx = tangent_rotation_j(&s, u, v, &xc).unwrap();
        let jjx = tangent_rotation_j(&s, u, v, &jx).unwrap();
        let eps = g.epsilon();
        prop_assert!((jjx.components - xc.components * eps).max_abs() < 1e-10 * (1.0 + xc.components.max_abs()));
        let jxf = g.rotate(x);
        prop_assert!((g.dot(jxf, jxf) + eps * g.dot(x, x)).abs() < 1e-10 * (1.0 + g.dot(x, x).abs()));
    }

    #[test]
    fn normal_is_unit_and_orthogonal(u in -0.9..0.9f64, v in -0.9..0.9f64) {
        let (_, s) = spacelike_helix(EtaSpec::sinusoidal(0.3, 1.0, 0.0));
        let g = local_geometry(&s, u, v).unwrap();
        prop_assert!((g.dot(g.normal, g.normal) - g.epsilon()).abs() < 1e-12);
        prop_assert!(g.dot(g.normal, g.tangents[0]).abs() < 1e-12);
        prop_assert!(g.dot(g.normal, g.tangents[1]).abs() < 1e-12);
    }
}

#[test]
fn zero_vector_rotates_to_zero() {
    let s = timelike_helix();
    let g = local_geometry(&s, 0.0, 0.0).unwrap();
    let z = TangentVector64::zero(g.point);
    assert_eq!(tangent_rotation_j(&s, 0.0, 0.0, &z).unwrap().components.max_abs(), 0.0);
}

#[test]
fn shape_operator_bases() {
    let (p, s) = spacelike_helix(EtaSpec::linear(0.0, 1.0));
    let (u, v) = (0.25, -0.5);
    let ad = shape_operator(&s, u, v, ShapeBasis::AdaptedTjt).unwrap();
    assert_eq!(ad.basis, ShapeBasis::AdaptedTjt);
    assert!(ad.m[0][0].abs() < 1e-12 && (ad.m[0][1] + 1.0).abs() < 1e-12 && (ad.m[1][0] + 1.0).abs() < 1e-12);
    let co = shape_operator(&s, u, v, ShapeBasis::Coordinate).unwrap();
    assert!((co.trace() - ad.trace()).abs() < 1e-12);
    assert!((co.det() - ad.det()).abs() < 1e-12);
    let mu = helix_h3::families::predicted_mu(&p, u, v);
    assert!((mean_curvature(&s, u, v).unwrap() - mu / 2.0).abs() < 1e-12);
}

#[test]
fn gaussian_curvature_methods_agree() {
    let (_, s) = spacelike_helix(EtaSpec::sinusoidal(0.3, 1.0, 0.0));
    let ke = gaussian_curvature(&s, 0.1, 0.2, CurvatureMethod::Extrinsic).unwrap();
    let ki = gaussian_curvature(&s, 0.1, 0.2, CurvatureMethod::Intrinsic).unwrap();
    assert!((ke + 4.0).abs() < 1e-12);
    assert!((ki + 4.0).abs() < 1e-6);
    let prm = SpaceParams64::heisenberg(Sign::Plus, 1.0);
    let c = make_cmc_cylinder(prm, Causal::Spacelike, dom()).unwrap();
    assert!(gaussian_curvature(&c, 0.0, 0.0, CurvatureMethod::Intrinsic).unwrap().abs() < 1e-6);
}

#[test]
fn finite_difference_jets_track_analytic_ones() {
    let (_, s) = spacelike_helix(EtaSpec::sinusoidal(0.3, 1.0, 0.0));
    let fd = s.with_jet_source(JetSource::FiniteDifference).unwrap();
    let (a, b) = (s.jet(0.3, 0.4).unwrap(), fd.jet(0.3, 0.4).unwrap());
    for i in 0..2 {
        assert!((a.first[i] - b.first[i]).max_abs() < 1e-9);
        for j in 0..2 {
            assert!((a.second[i][j] - b.second[i][j]).max_abs() < 1e-6);
        }
    }
    assert!(matches!(fd.jet(1.0, 0.0), Err(GeomError::OutOfDomain { .. })));
}

#[test]
fn cylinder_jet_example() {
    let prm = SpaceParams64::heisenberg(Sign::Minus, 0.6);
    let c = make_cmc_cylinder(prm, Causal::Timelike, dom()).unwrap();
    assert_eq!(c.jet(0.0, 0.0).unwrap().first[1], V3([0.0, -1.0, -0.6]));
}

#[test]
fn degenerate_patch_is_reported() {
    // u ↦ the null line (t, t, 0) at x = y in the δ = 1 metric.
    let prm = SpaceParams64::heisenberg(Sign::Plus, 1.0);
    let imm = Pointwise(|u: f64, v: f64| Ok(V3([u + v, u + v, v])));
    let r = SurfacePatch::new(prm, dom(), Arc::new(imm), JetSource::FiniteDifference);
    assert!(matches!(r, Err(GeomError::DegenerateInducedMetric { .. })));
}

#[test]
fn grid_order_is_u_major() {
    let pts = Grid::new(3, 2).points(&dom());
    assert_eq!(pts, vec![(-1.0, -1.0), (-1.0, 1.0), (0.0, -1.0), (0.0, 1.0), (1.0, -1.0), (1.0, 1.0)]);
}
