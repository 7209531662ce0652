use std::fmt::Write as _;

use helix_h3::families::Family;
use helix_h3::surface::report::fmt_f64;
use helix_h3::surface::{analyze_grid, Grid};
use helix_h3::Result;

/// OBJ text: one vertex per grid sample (chart coordinates), each grid cell
/// split into two triangles.
pub fn to_obj(family: &Family<f64>, grid: &Grid) -> Result<String> {
    let patch = &family.patch;
    let report = analyze_grid(patch, grid)?;
    let s = &report.summary;
    let mut out = String::new();
    let _ = writeln!(out, "# h3helix mesh");
    let _ = writeln!(out, "# family: {}", family.descriptor.label());
    match s.epsilon {
        Some(e) => {
            let _ = writeln!(out, "# epsilon: {e}");
        }
        None => {
            let _ = writeln!(out, "# epsilon: mixed");
        }
    }
    let _ = writeln!(out, "# nu: mean {} range {}", fmt_f64(s.nu.mean), fmt_f64(s.nu.range));
    let _ = writeln!(out, "# K: mean {} range {}", fmt_f64(s.k_ext.mean), fmt_f64(s.k_ext.range));
    let _ = writeln!(out, "# vertices are raw (x, y, z) chart values; the ambient metric is Lorentzian, not Euclidean");
    for (u, v) in grid.points(patch.domain()) {
        let p = patch.position(u, v)?;
        let _ = writeln!(out, "v {} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2]));
    }
    let idx = |i: usize, j: usize| i * grid.nv + j + 1;
    for i in 0..grid.nu.saturating_sub(1) {
        for j in 0..grid.nv.saturating_sub(1) {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            let _ = writeln!(out, "f {a} {b} {c}");
            let _ = writeln!(out, "f {a} {c} {d}");
        }
    }
    Ok(out)
}
