//! End-to-end verification of the helix classification.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::curve::{frenet_frame, geodesic_curvature_sq, speed_deviation, torsion, vertical_components, CurveSpec};
use crate::geometry::KillingField;
use crate::helix::{
    build_triharmonic_helix, classify, grid_scan, normalize_helix, TriharmonicHelixParams, ZBranch,
    ROOT_RESIDUAL_TOL,
};
use crate::integrate::{integrate_frenet_natural, FrenetState};
use crate::killing::{linspace, proposition_check};
use crate::report::{Check, Report};
use crate::tension::{r_tension_jet, triharmonic_frenet_components, triharmonic_residual_direct_jet};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Curvature the classified helix is expected to have.
    pub kappa_target: f64,
    pub tau_target: f64,
    /// Harmonicity order of the tension check; 3 expects a zero, anything else
    /// expects a residual bounded away from zero.
    pub r: usize,
    pub samples: usize,
    pub s_lo: f64,
    pub s_hi: f64,
    pub classify_samples: usize,
    pub jet_order: usize,
    pub step: f64,
    pub s_max: f64,
    pub killing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            kappa_target: 0.5,
            tau_target: 0.5,
            r: 3,
            samples: 101,
            s_lo: -5.0,
            s_hi: 5.0,
            classify_samples: 10_000,
            jet_order: crate::DEFAULT_JET_ORDER,
            step: crate::integrate::DEFAULT_STEP,
            s_max: 5.0,
            killing: true,
        }
    }
}

fn classification_checks(opts: &VerifyOptions, report: &mut Report) {
    match classify(opts.classify_samples) {
        Ok(result) => {
            let c1_err = result.roots.iter().map(|r| (r.c1.abs() - FRAC_1_SQRT_2).abs()).fold(0.0, f64::max);
            let ab_err = result
                .roots
                .iter()
                .map(|r| {
                    let b = if r.z_branch == ZBranch::Z1 { 0.5 } else { -0.5 };
                    (r.a - 0.5).abs().max((r.b - b).abs())
                })
                .fold(0.0, f64::max);
            let has_both = [ZBranch::Z1, ZBranch::Z2].iter().all(|z| result.roots.iter().any(|r| r.z_branch == *z));
            report.push(Check::at_most("classify.c1", c1_err, 1e-10));
            report.push(Check::at_most("classify.ab", ab_err, 1e-10));
            report.push(Check::at_most("classify.branches", if has_both { 0.0 } else { 1.0 }, 0.0));
            report.push(Check::at_most("classify.residual", result.residual_at_root, ROOT_RESIDUAL_TOL));
            let best_frame = result.roots.iter().map(|r| r.frame_residual.abs()).fold(f64::INFINITY, f64::min);
            report.push(Check::at_most("classify.frame_realized", best_frame, ROOT_RESIDUAL_TOL));
            report.roots = result.roots;
        }
        Err(_) => report.push(Check::failed("classify.c1")),
    }
    let g = grid_scan();
    report.metric("grid_scan.flagged_cells", g.flagged.len() as f64);
    report.push(Check::at_most("grid_scan.unexpected_cells", g.unexpected.len() as f64, 0.0));
}

fn helix_checks(opts: &VerifyOptions, spec: &CurveSpec, report: &mut Report) {
    let s_values = linspace(opts.s_lo, opts.s_hi, opts.samples);
    let mut unit = 0.0f64;
    let mut kappa_dev = 0.0f64;
    let mut tau_dev = 0.0f64;
    let mut n3 = 0.0f64;
    let mut formula = 0.0f64;
    let mut direct = 0.0f64;
    let mut frenet = 0.0f64;
    let mut two_path = 0.0f64;
    let mut general = 0.0f64;
    let mut r_norm_min = f64::INFINITY;
    let mut failed = false;
    for &s in &s_values {
        let Ok(cj) = spec.jet(s, opts.jet_order) else {
            failed = true;
            continue;
        };
        let mut eval = || -> crate::Result<()> {
            unit = unit.max(speed_deviation(&cj)?);
            kappa_dev = kappa_dev.max((libm::sqrt(geodesic_curvature_sq(&cj)?.value()) - opts.kappa_target).abs());
            tau_dev = tau_dev.max((torsion(&cj)?.value() - opts.tau_target).abs());
            let f = frenet_frame(&cj)?;
            let v = vertical_components(&f);
            n3 = n3.max(v.n3.abs());
            formula = formula.max(v.formula_deviation);
            let d = triharmonic_residual_direct_jet(&cj)?;
            let fr = triharmonic_frenet_components(&f)?;
            direct = direct.max(d.norm());
            frenet = frenet.max(libm::sqrt(fr.iter().map(|x| x * x).sum()));
            two_path = two_path.max((d - f.to_frame(fr)).norm());
            let rt = r_tension_jet(&cj, opts.r)?;
            if opts.r == 3 {
                general = general.max((rt - d).norm());
            }
            r_norm_min = r_norm_min.min(rt.norm());
            Ok(())
        };
        if eval().is_err() {
            failed = true;
        }
    }
    if failed {
        report.push(Check::failed("helix.evaluation"));
    }
    report.push(Check::at_most("helix.unit_speed", unit, 1e-12));
    report.push(Check::at_most("helix.kappa", kappa_dev, 1e-10));
    report.push(Check::at_most("helix.tau", tau_dev, 1e-10));
    report.push(Check::at_most("helix.N3", n3, 1e-12));
    report.push(Check::at_most("helix.vertical_formulas", formula, 1e-8));
    if opts.r == 3 {
        report.push(Check::at_most("tension.direct", direct, 1e-9));
        report.push(Check::at_most("tension.frenet", frenet, 1e-9));
        report.push(Check::at_most("tension.two_path", two_path, 1e-7));
        report.push(Check::at_most("tension.general_vs_direct", general, 1e-12));
    } else {
        report.push(Check::at_least(&format!("tension.r{}_nonzero", opts.r), r_norm_min, 1e-6));
    }
    report.metric("tension.direct_max_norm", direct);
    report.metric(&format!("tension.r{}_min_norm", opts.r), r_norm_min);

    let reference = build_triharmonic_helix(&TriharmonicHelixParams::reference());
    let mut branch_dev = 0.0f64;
    for branch in 1..=4u8 {
        let normalized = TriharmonicHelixParams::new(branch, 2.5, -1.0, 0.75).and_then(|p| normalize_helix(&p));
        match (&normalized, &reference) {
            (Ok(c), Ok(r)) => {
                for &s in &s_values {
                    let (u, v) = (c.point(s), r.point(s));
                    branch_dev = branch_dev.max((u.x - v.x).abs().max((u.y - v.y).abs()).max((u.z - v.z).abs()));
                }
            }
            _ => branch_dev = f64::NAN,
        }
    }
    report.push(Check::at_most("helix.branches_normalize", branch_dev, 1e-12));
}

fn integrator_checks(opts: &VerifyOptions, spec: &CurveSpec, report: &mut Report) {
    let start = spec.jet(0.0, opts.jet_order).and_then(|cj| frenet_frame(&cj));
    let Ok(f) = start else {
        report.push(Check::failed("integrate.deviation"));
        return;
    };
    let init = FrenetState { p: f.point(), t: f.t.value(), n: f.n.value(), b: f.b.value() };
    let a = opts.kappa_target;
    let b = opts.tau_target;
    let coarse = integrate_frenet_natural(a, b, &init, opts.step, opts.s_max);
    let fine = integrate_frenet_natural(a, b, &init, 0.5 * opts.step, opts.s_max);
    match (coarse, fine) {
        (Ok(c), Ok(h)) => {
            let dc = c.max_deviation_from(spec);
            let dh = h.max_deviation_from(spec);
            report.push(Check::at_most("integrate.deviation", dc, 1e-6));
            report.push(Check::at_most("integrate.drift", c.max_drift, 1e-8));
            report.push(Check::at_least("integrate.halving_ratio", dc / dh, 12.0));
            report.metric("integrate.deviation_half_step", dh);
        }
        _ => report.push(Check::failed("integrate.deviation")),
    }
}

/// Runs classification, construction, curvature and torsion checks, both
/// triharmonic residual paths, the integrator cross-check and (optionally) the
/// Killing-field checks, collecting everything into one report.
pub fn verify_theorem(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    classification_checks(opts, &mut report);
    match build_triharmonic_helix(&TriharmonicHelixParams::reference()) {
        Ok(spec) => {
            helix_checks(opts, &spec, &mut report);
            integrator_checks(opts, &spec, &mut report);
        }
        Err(_) => report.push(Check::failed("helix.build")),
    }
    if opts.killing {
        for id in [KillingField::V1, KillingField::V3] {
            report.extend(proposition_check(id));
        }
    }
    report
}

/// Names of failing checks, for quick diagnostics.
pub fn failing_names(report: &Report) -> Vec<&str> {
    report.failures().map(|c| c.name.as_str()).collect()
}
