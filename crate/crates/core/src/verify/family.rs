//! Family invariants, profile constraints, and the implications between
//! parallel, CMC and constant-angle surfaces.

use serde::Serialize;

use crate::error::Result;
use crate::families::{build_profile, predicted_mu, Family, FamilyDescriptor, FamilyKind};
use crate::surface::Grid;

use super::parallel::check_parallel;
use super::surface::{adapted_shapes, check_codazzi, check_gauss, check_helix_ode, check_surface, nu_range, sample_grid, HELIX_NU_RANGE};
use super::{check_ambient, claim, max_of, ResidualSuite, SuiteName, Tolerances};

/// Grid-level facts the claims are decided on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyObservation {
    pub label: String,
    pub nu_range: f64,
    pub h_range: f64,
    pub min_abs_h: f64,
    pub parallel_residual: f64,
    pub parallel: bool,
    pub cmc: bool,
    pub constant_angle: bool,
}

fn range(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let hi = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    let lo = xs.fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Expected invariants of a built family, over its grid.
pub fn check_family(family: &Family<f64>, tols: &Tolerances) -> Result<ResidualSuite> {
    let d = &family.descriptor;
    let grid = d.grid;
    let ex = &family.expected;
    let mut suite = ResidualSuite::new("family", 0);
    let samples = sample_grid(&family.patch, &grid)?;
    let shapes = adapted_shapes(&samples)?;
    let h = samples.iter().map(|g| g.mean_curvature());

    suite.record(tols, "epsilon", claim(samples.iter().all(|g| g.first.epsilon == ex.epsilon)));
    suite.record(tols, "nu_constant", max_of(samples.iter().map(|g| (g.nu - ex.nu).abs())));
    suite.record(tols, "k_constant", max_of(samples.iter().map(|g| (g.gaussian_curvature_ext() - ex.k).abs())));
    match d.family {
        FamilyKind::MinimalPlane => {
            suite.record(tols, "minimal", max_of(h.clone().map(f64::abs)));
        }
        FamilyKind::CmcCylinder => {
            suite.record(tols, "cmc_range", range(h.clone())).value = Some(samples[0].mean_curvature());
            let min_h = h.clone().map(f64::abs).fold(f64::INFINITY, f64::min);
            suite.record(tols, "cmc_nonzero", (1e-3 - min_h).max(0.0));
        }
        FamilyKind::Helix => {
            suite.record(tols, "non_cmc", (1e-3 - range(h.clone())).max(0.0));
            let p = family.profile.as_ref().expect("helix family has a profile");
            let mu = samples.iter().zip(&shapes).map(|(g, m)| (m[1][1] - predicted_mu(p, g.u, g.v)).abs());
            suite.record(tols, "mu_closed_form", max_of(mu));
        }
    }
    let tau = d.tau;
    let (de, dl) = (d.delta.value::<f64>() * ex.epsilon.value::<f64>(), d.delta.value::<f64>());
    suite.record(
        tols,
        "s_pattern",
        max_of(shapes.iter().map(|m| {
            m[0][0].abs().max((m[0][1] - de * tau).abs()).max((m[1][0] + dl * tau).abs())
        })),
    );
    suite.record(
        tols,
        "h_equals_half_mu",
        max_of(samples.iter().zip(&shapes).map(|(g, m)| (g.mean_curvature() - 0.5 * m[1][1]).abs())),
    );
    suite.record(tols, "non_umbilical", max_of(shapes.iter().map(|m| (tau.abs() - m[0][1].abs()).max(0.0))));
    Ok(suite.finish())
}

/// Constraint residuals of the helix profile on the grid's `v` samples.
pub fn check_profile(family: &Family<f64>, tols: &Tolerances) -> Result<Option<ResidualSuite>> {
    let Some(p) = &family.profile else { return Ok(None) };
    let d = &family.descriptor;
    let f = build_profile(p, d.domain.v)?;
    let margin = if f.is_closed_form() { 0.0 } else { 2.0 * crate::fd::SURFACE_STEP };
    let vs: Vec<f64> = d.grid.points(&d.domain).into_iter().take(d.grid.nv).map(|(_, v)| v).collect();
    let mut r = Vec::new();
    for v in vs.into_iter().filter(|v| *v >= d.domain.v[0] + margin && *v <= d.domain.v[1] - margin) {
        let [a, b] = f.constraint_residuals(v)?;
        r.push(a.max(b));
    }
    let id = if f.is_closed_form() { "profile_constraints_analytic" } else { "profile_constraints_quadrature" };
    let mut suite = ResidualSuite::new("profile", 0);
    suite.record(tols, id, max_of(r));
    Ok(Some(suite.finish()))
}

/// Observations for the implication checks.
pub fn observe(family: &Family<f64>, tols: &Tolerances) -> Result<FamilyObservation> {
    let grid = family.descriptor.grid;
    let samples = sample_grid(&family.patch, &grid)?;
    let h = samples.iter().map(|g| g.mean_curvature());
    let parallel_residual = check_parallel(&family.patch, &grid)?;
    let h_range = range(h.clone());
    let nu_range = nu_range(&samples);
    Ok(FamilyObservation {
        label: family.descriptor.label(),
        nu_range,
        h_range,
        min_abs_h: h.map(f64::abs).fold(f64::INFINITY, f64::min),
        parallel_residual,
        parallel: parallel_residual <= tols.get("parallel"),
        cmc: h_range <= tols.get("cmc_range"),
        constant_angle: nu_range <= HELIX_NU_RANGE,
    })
}

/// Parallel ⇒ CMC; CMC ⇔ parallel on constant-angle patches; for those also
/// `K = 4δετ²ν²`, `H = μ/2` and `|S₁₂| ≥ |τ|`; and CMC as the family predicts.
pub fn check_claims(family: &Family<f64>, tols: &Tolerances) -> Result<ResidualSuite> {
    let o = observe(family, tols)?;
    let mut suite = ResidualSuite::new("claims", 0);
    suite.record(tols, "parallel_implies_cmc", claim(!o.parallel || o.cmc));
    suite.record(tols, "cmc_iff_parallel", claim(!o.constant_angle || o.parallel == o.cmc));
    suite.record(tols, "expected_cmc", claim(o.cmc == family.expected.cmc));
    if o.constant_angle {
        let grid = family.descriptor.grid;
        let samples = sample_grid(&family.patch, &grid)?;
        let shapes = adapted_shapes(&samples)?;
        let d = &family.descriptor;
        let nu = samples.iter().map(|g| g.nu).sum::<f64>() / samples.len() as f64;
        let k = 4.0 * d.delta.value::<f64>() * samples[0].epsilon() * d.tau * d.tau * nu * nu;
        suite.record(tols, "helix_k_constant", max_of(samples.iter().map(|g| (g.gaussian_curvature_ext() - k).abs())));
        suite.record(
            tols,
            "h_equals_half_mu",
            max_of(samples.iter().zip(&shapes).map(|(g, m)| (g.mean_curvature() - 0.5 * m[1][1]).abs())),
        );
        suite.record(tols, "non_umbilical", max_of(shapes.iter().map(|m| (d.tau.abs() - m[0][1].abs()).max(0.0))));
    }
    suite.record_with("parallel", o.parallel_residual, f64::INFINITY).value = Some(claim(!o.parallel));
    Ok(suite.finish())
}

/// Runs the named suites on one family. `all` runs every suite that applies.
pub fn run_suites(family: &Family<f64>, names: &[SuiteName], seed: u64, tols: &Tolerances) -> Result<ResidualSuite> {
    let d = &family.descriptor;
    let patch = &family.patch;
    let grid = d.grid;
    let mut names = names.to_vec();
    if names.contains(&SuiteName::All) {
        names = vec![SuiteName::Ambient, SuiteName::Surface, SuiteName::Family, SuiteName::Profile, SuiteName::Claims];
        if family.expected.cmc {
            names.push(SuiteName::Parallel);
        }
    }
    names.sort();
    names.dedup();
    let suite_name = names.iter().map(|n| n.as_str()).collect::<Vec<_>>().join("+");
    let mut out = ResidualSuite::new(suite_name, seed).with_patch(d.label(), grid);
    for name in names {
        match name {
            SuiteName::Ambient => out.absorb("ambient", check_ambient(&d.params(), seed, tols)?),
            SuiteName::Surface => out.absorb("surface", check_surface(patch, &grid, tols)?),
            SuiteName::Gauss => {
                out.record(tols, "gauss", check_gauss(patch, &grid)?);
            }
            SuiteName::Codazzi => {
                out.record(tols, "codazzi", check_codazzi(patch, &grid)?);
            }
            SuiteName::HelixOde => {
                out.record(tols, "helix_ode", check_helix_ode(patch, &grid)?);
            }
            SuiteName::Parallel => {
                out.record(tols, "parallel", check_parallel(patch, &grid)?);
            }
            SuiteName::Family => out.absorb("family", check_family(family, tols)?),
            SuiteName::Profile => {
                if let Some(s) = check_profile(family, tols)? {
                    out.absorb("profile", s);
                }
            }
            SuiteName::Claims => out.absorb("claims", check_claims(family, tols)?),
            SuiteName::All => unreachable!(),
        }
    }
    Ok(out.finish())
}

/// Every applicable suite except the ambient one over a list of families.
pub fn run_family_matrix(descriptors: &[FamilyDescriptor<f64>], seed: u64, tols: &Tolerances) -> Result<ResidualSuite> {
    let mut out = ResidualSuite::new("matrix", seed);
    let names = [SuiteName::Surface, SuiteName::Family, SuiteName::Profile, SuiteName::Claims];
    for d in descriptors {
        let family = Family::build(d)?;
        let mut names = names.to_vec();
        if family.expected.cmc {
            names.push(SuiteName::Parallel);
        }
        out.absorb(&d.label(), run_suites(&family, &names, seed, tols)?);
    }
    Ok(out.finish())
}

/// Convenience: builds and runs a family with an overridden grid.
pub fn run_on_grid(descriptor: &FamilyDescriptor<f64>, grid: Grid, names: &[SuiteName], seed: u64, tols: &Tolerances) -> Result<ResidualSuite> {
    let mut d = descriptor.clone();
    d.grid = grid;
    run_suites(&Family::build(&d)?, names, seed, tols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::standard_family_matrix;

    #[test]
    fn matrix_passes() {
        let tols = Tolerances::default();
        let m = standard_family_matrix::<f64>(Grid::new(12, 12));
        let s = run_family_matrix(&m, 1, &tols).unwrap();
        for c in s.checks.iter().filter(|c| !c.verdict.passed()) {
            eprintln!("{} {:e} > {:e}", c.id, c.max_residual, c.tol);
        }
        assert!(s.passed());
    }
}
