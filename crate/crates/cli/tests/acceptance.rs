//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};

use helix_h3::families::{
    build_profile, standard_family_matrix, Causal, EtaSpec, Family, FamilyDescriptor, FamilyKind, HelixProfile,
};
use helix_h3::surface::{local_geometry, Domain, Grid};
use helix_h3::verify::family::run_suites;
use helix_h3::verify::{check_ambient, check_parallel, run_family_matrix, ResidualSuite, SuiteName, Tolerances};
use helix_h3::{Sign, SpaceParams64};
use tempfile::TempDir;

const SEED: u64 = 20_240_917;

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, n: usize, what: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {what} ({detail})"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL criterion {n}: {what} ({detail})");
            }
        }
    }
}

fn within(name: &str, value: f64, tol: f64) -> Result<f64, String> {
    if value <= tol {
        Ok(value)
    } else {
        Err(format!("{name} = {value:e} > {tol:e}"))
    }
}

fn check(suite: &ResidualSuite, id: &str, tol: f64) -> Result<f64, String> {
    let c = suite.check(id).ok_or_else(|| format!("{id} missing from {}", suite.patch.as_deref().unwrap_or("")))?;
    within(&format!("{} {id}", suite.patch.as_deref().unwrap_or("")), c.max_residual, tol)
}

fn domain() -> Domain<f64> {
    Domain::new(-1.0, 1.0, -1.0, 1.0).unwrap()
}

fn ambient_suites() -> Result<Vec<ResidualSuite>, String> {
    let tols = Tolerances::default();
    let mut out = Vec::new();
    for delta in [Sign::Minus, Sign::Plus] {
        for tau in [0.5, 1.0, 2.0] {
            let s = check_ambient(&SpaceParams64::heisenberg(delta, tau), SEED, &tols).map_err(|e| e.to_string())?;
            out.push(s.with_patch(format!("delta={} tau={tau}", delta.as_i8()), Grid::new(1, 1)));
        }
    }
    Ok(out)
}

fn criterion_1(suites: &[ResidualSuite]) -> Result<String, String> {
    let mut worst = 0f64;
    for s in suites {
        check(s, "connection_closed_form", 0.0)?;
        worst = worst.max(check(s, "connection_fd", 1e-6)?);
        worst = worst.max(check(s, "curvature_fd", 1e-6)?);
    }
    Ok(format!("closed forms exact, worst finite-difference residual {worst:.2e}"))
}

fn criterion_2(suites: &[ResidualSuite]) -> Result<String, String> {
    let mut worst = 0f64;
    for s in suites {
        check(s, "curvature_closed_form", 0.0)?;
        worst = worst.max(check(s, "curvature_random", 1e-10)?);
    }
    Ok(format!("frame triples exact, worst random-triple residual {worst:.2e}"))
}

fn criterion_3(suites: &[ResidualSuite]) -> Result<String, String> {
    let mut worst = 0f64;
    for s in suites {
        worst = worst.max(check(s, "constant_curvature", 1e-6)?);
    }
    Ok(format!("worst sectional curvature spread {worst:.2e}"))
}

const CLASSIFIED: [(Sign, Causal); 3] =
    [(Sign::Minus, Causal::Timelike), (Sign::Plus, Causal::Timelike), (Sign::Plus, Causal::Spacelike)];

fn descriptor(family: FamilyKind, delta: Sign, causal: Causal, tau: f64, grid: Grid) -> FamilyDescriptor<f64> {
    FamilyDescriptor {
        family,
        delta,
        causal,
        tau,
        phi0: None,
        theta: None,
        c: None,
        eta: None,
        initial: None,
        domain: domain(),
        grid,
    }
}

fn build(d: &FamilyDescriptor<f64>) -> Result<Family<f64>, String> {
    Family::build(d).map_err(|e| format!("{}: {e}", d.label()))
}

fn criterion_4() -> Result<String, String> {
    let grid = Grid::new(50, 50);
    let (mut h, mut nu, mut k) = (0f64, 0f64, 0f64);
    for (delta, causal) in CLASSIFIED {
        for phi0 in [0.0, 0.7, -1.3] {
            let d = FamilyDescriptor { phi0: Some(phi0), ..descriptor(FamilyKind::MinimalPlane, delta, causal, 1.0, grid) };
            let f = build(&d)?;
            for (u, v) in grid.points(&d.domain) {
                let g = local_geometry(&f.patch, u, v).map_err(|e| e.to_string())?;
                h = h.max(g.mean_curvature().abs());
                nu = nu.max(g.nu.abs());
                k = k.max(g.gaussian_curvature_ext().abs());
            }
        }
    }
    within("|H|", h, 1e-8)?;
    within("|nu|", nu, 1e-10)?;
    within("|K|", k, 1e-8)?;
    Ok(format!("max |H| {h:.2e}, |nu| {nu:.2e}, |K| {k:.2e} over 9 planes"))
}

fn criterion_5() -> Result<String, String> {
    let grid = Grid::new(20, 20);
    let (mut h_range, mut h_min, mut nu, mut k, mut par) = (0f64, f64::INFINITY, 0f64, 0f64, 0f64);
    for (delta, causal) in CLASSIFIED {
        for tau in [0.5, 1.0, 2.0] {
            let d = descriptor(FamilyKind::CmcCylinder, delta, causal, tau, grid);
            let f = build(&d)?;
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for (u, v) in grid.points(&d.domain) {
                let g = local_geometry(&f.patch, u, v).map_err(|e| e.to_string())?;
                let hh = g.mean_curvature();
                lo = lo.min(hh);
                hi = hi.max(hh);
                h_min = h_min.min(hh.abs());
                nu = nu.max(g.nu.abs());
                k = k.max(g.gaussian_curvature_ext().abs());
            }
            h_range = h_range.max(hi - lo);
            par = par.max(check_parallel(&f.patch, &grid).map_err(|e| e.to_string())?);
        }
    }
    within("range(H)", h_range, 1e-8)?;
    if h_min < 1e-3 {
        return Err(format!("min |H| = {h_min:e} < 1e-3"));
    }
    within("|nu|", nu, 1e-10)?;
    within("|K|", k, 1e-8)?;
    within("parallel residual", par, 1e-5)?;
    Ok(format!("range(H) {h_range:.2e}, min |H| {h_min}, parallel residual {par:.2e}"))
}

fn helix_descriptor(causal: Causal, theta: f64, tau: f64, eta: EtaSpec<f64>) -> FamilyDescriptor<f64> {
    FamilyDescriptor {
        theta: Some(theta),
        c: Some(0.1),
        eta: Some(eta),
        ..descriptor(FamilyKind::Helix, Sign::Plus, causal, tau, Grid::new(24, 24))
    }
}

fn etas() -> [EtaSpec<f64>; 3] {
    [EtaSpec::constant(0.0), EtaSpec::linear(0.0, 1.0), EtaSpec::sinusoidal(0.3, 1.0, 0.0)]
}

fn helix_battery(causal: Causal, theta: f64) -> Result<String, String> {
    let tols = Tolerances::default();
    let names = [SuiteName::Surface, SuiteName::Family, SuiteName::Profile];
    let mut worst = [0f64; 7];
    for tau in [0.5, 1.0] {
        for eta in etas() {
            let d = helix_descriptor(causal, theta, tau, eta);
            let f = build(&d)?;
            let s = run_suites(&f, &names, SEED, &tols).map_err(|e| e.to_string())?;
            let r = [
                check(&s, "family/nu_constant", 1e-7)?,
                check(&s, "family/k_constant", 1e-6)?,
                check(&s, "family/s_pattern", 1e-6)?,
                check(&s, "family/mu_closed_form", 1e-5)?,
                check(&s, "surface/gauss", 1e-5)?,
                check(&s, "surface/codazzi", 1e-4)?,
                check(&s, "surface/helix_ode", 1e-5)?,
            ];
            check(&s, "family/non_cmc", 0.0)?;
            check(&s, "family/epsilon", 0.0)?;
            for (w, x) in worst.iter_mut().zip(r) {
                *w = w.max(x);
            }
        }
    }
    Ok(format!(
        "nu {:.1e}, K {:.1e}, S {:.1e}, mu {:.1e}, gauss {:.1e}, codazzi {:.1e}, ode {:.1e}, range(H) >= 1e-3",
        worst[0], worst[1], worst[2], worst[3], worst[4], worst[5], worst[6]
    ))
}

fn criterion_6() -> Result<String, String> {
    helix_battery(Causal::Spacelike, 1f64.asinh())
}

fn criterion_7() -> Result<String, String> {
    let theta = std::f64::consts::FRAC_PI_4;
    let battery = helix_battery(Causal::Timelike, theta)?;
    let mut worst = 0f64;
    for tau in [0.5, 1.0] {
        for eta in etas() {
            let p = HelixProfile::new(Causal::Timelike, theta, 0.1, eta, tau);
            let f = build_profile(&p, [-1.0, 1.0]).map_err(|e| e.to_string())?;
            for i in 1..50 {
                let v = -1.0 + 2.0 * i as f64 / 50.0;
                worst = worst.max(f.constraint_residuals(v).map_err(|e| e.to_string())?[0]);
            }
        }
    }
    within("f-constraint", worst, 1e-8)?;
    Ok(format!("{battery}, f-constraint {worst:.1e}"))
}

fn criterion_8() -> Result<String, String> {
    let etas = [
        EtaSpec::constant(0.2),
        EtaSpec::linear(0.0, 1.0),
        EtaSpec::sinusoidal(0.3, 1.0, 0.0),
        EtaSpec::polynomial(vec![0.0, 1.0, -0.5, 0.2]),
    ];
    let (mut analytic, mut quadrature) = (0f64, 0f64);
    for (causal, theta) in [(Causal::Spacelike, 1f64.asinh()), (Causal::Timelike, std::f64::consts::FRAC_PI_4)] {
        for tau in [0.5, 1.0, -2.0] {
            for eta in &etas {
                let p = HelixProfile::new(causal, theta, 0.1, eta.clone(), tau);
                let f = build_profile(&p, [-1.0, 1.0]).map_err(|e| e.to_string())?;
                for i in 1..100 {
                    let v = -1.0 + 2.0 * i as f64 / 100.0;
                    let [a, b] = f.constraint_residuals(v).map_err(|e| e.to_string())?;
                    let slot = if f.is_closed_form() { &mut analytic } else { &mut quadrature };
                    *slot = slot.max(a).max(b);
                }
            }
        }
    }
    within("analytic", analytic, 1e-10)?;
    within("quadrature", quadrature, 1e-8)?;
    Ok(format!("analytic {analytic:.1e}, quadrature {quadrature:.1e}"))
}

fn criterion_9() -> Result<String, String> {
    let tols = Tolerances::default();
    let m = standard_family_matrix::<f64>(Grid::new(16, 16));
    let s = run_family_matrix(&m, SEED, &tols).map_err(|e| e.to_string())?;
    let claims: Vec<_> = s.checks.iter().filter(|c| c.id.contains("/claims/")).collect();
    let need = ["parallel_implies_cmc", "cmc_iff_parallel", "h_equals_half_mu", "non_umbilical"];
    for id in need {
        let n = claims.iter().filter(|c| c.id.ends_with(&format!("/{id}"))).count();
        if n == 0 {
            return Err(format!("no {id} records"));
        }
    }
    if let Some(c) = claims.iter().find(|c| !c.verdict.passed()) {
        return Err(format!("{} = {:e} > {:e}", c.id, c.max_residual, c.tol));
    }
    if let Some(c) = s.checks.iter().find(|c| !c.verdict.passed()) {
        return Err(format!("{} = {:e} > {:e}", c.id, c.max_residual, c.tol));
    }
    Ok(format!("{} families, {} claim records", m.len(), claims.len()))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_h3helix")).args(args).output().map_err(|e| e.to_string())?;
    match o.status.code() {
        Some(0) => Ok(()),
        c => Err(format!("{args:?} exited {c:?}: {}", String::from_utf8_lossy(&o.stderr))),
    }
}

fn criterion_10() -> Result<String, String> {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let dirs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
    let helix = configs.join("spacelike_helix.json");
    let matrix = configs.join("matrix.json");
    for d in &dirs {
        let out = d.path().to_str().unwrap();
        run_cli(&["analyze", "--config", helix.to_str().unwrap(), "--out", out])?;
        run_cli(&["mesh", "--config", helix.to_str().unwrap(), "--out", out])?;
        run_cli(&["verify", "--config", helix.to_str().unwrap(), "--out", &format!("{out}/helix")])?;
        run_cli(&["verify", "--config", matrix.to_str().unwrap(), "--out", &format!("{out}/matrix")])?;
    }
    let files = ["samples.csv", "summary.json", "mesh.obj", "helix/suite.json", "matrix/suite.json"];
    let mut bytes = 0;
    for f in files {
        let a = fs::read(dirs[0].path().join(f)).map_err(|e| e.to_string())?;
        let b = fs::read(dirs[1].path().join(f)).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{f} differs between runs"));
        }
        bytes += a.len();
    }
    Ok(format!("{} files, {bytes} bytes identical", files.len()))
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    let ambient = ambient_suites();
    let amb = |f: fn(&[ResidualSuite]) -> Result<String, String>| ambient.as_ref().map_err(Clone::clone).and_then(|s| f(s));
    gate.report(1, "ambient connection and curvature tables", amb(criterion_1));
    gate.report(2, "curvature formula equivalence", amb(criterion_2));
    gate.report(3, "constant-curvature space", amb(criterion_3));
    gate.report(4, "minimal planes", criterion_4());
    gate.report(5, "CMC cylinders", criterion_5());
    gate.report(6, "spacelike helices", criterion_6());
    gate.report(7, "timelike helices", criterion_7());
    gate.report(8, "profile constraints", criterion_8());
    gate.report(9, "claims over the family matrix", criterion_9());
    gate.report(10, "determinism", criterion_10());
    if gate.failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}
