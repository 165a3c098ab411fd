//! Killing fields along curves: lengths, angles with the tangent, and the
//! general-helix checks for the three basis fields.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::curve::{frenet_frame, unit_tangent, Coordinate, CurveSpec};
use crate::error::{Error, Result};
use crate::geometry::{FrameVector, KillingField};
use crate::helix::{build_triharmonic_helix, TriharmonicHelixParams};
use crate::report::{Check, Report};
use crate::tension::{triharmonic_frenet_components, triharmonic_residual_direct_jet};
use crate::DEFAULT_JET_ORDER;

/// Samples whose spread is at most this are treated as constant.
pub const CONSTANCY_TOL: f64 = 1e-9;
/// `|res_N|` at or below this counts as a zero in the fine β scan.
pub const RESIDUAL_ZERO_TOL: f64 = 1e-9;
/// Predicted zero set of the normal residual: `|cos 2β|` at or below this.
pub const COS_ZERO_BAND: f64 = 2e-3;
pub const GEODESIC_COS_TOL: f64 = 1e-8;

pub fn killing_length_along(spec: &CurveSpec, id: KillingField, s: f64) -> f64 {
    id.at(&spec.point(s)).norm()
}

/// Field value and unit tangent at `γ(s)`, both in frame components.
fn field_and_tangent(spec: &CurveSpec, id: KillingField, s: f64) -> Result<(FrameVector, FrameVector)> {
    let t = unit_tangent(&spec.jet(s, 1)?)?.value();
    Ok((id.at(&spec.point(s)), t))
}

/// Angle in `[0, π]` between the field and the unit tangent.
pub fn killing_angle_with_tangent(spec: &CurveSpec, id: KillingField, s: f64) -> Result<f64> {
    let (v, t) = field_and_tangent(spec, id, s)?;
    let len = v.norm();
    if !(len > 0.0) {
        return Err(Error::ZeroField);
    }
    Ok(libm::acos((t.dot(&v) / len).clamp(-1.0, 1.0)))
}

/// `γ(s) = (cos β e^{−c} s + cx, sin β e^{c} s + cy, c)`, the unit-speed curves at
/// constant height making angle β with `V1`. Checks `κ = |cos 2β|` and
/// `τ = sin 2β` before returning.
pub fn constant_z_curve(beta: f64, c: f64, cx: f64, cy: f64) -> Result<CurveSpec> {
    let c2b = libm::cos(2.0 * beta);
    if !(c2b.abs() > GEODESIC_COS_TOL) {
        return Err(Error::GeodesicDegeneracy { kappa: c2b.abs() });
    }
    let spec = CurveSpec::new(
        Coordinate::affine(cx, libm::cos(beta) * libm::exp(-c)),
        Coordinate::affine(cy, libm::sin(beta) * libm::exp(c)),
        Coordinate::affine(c, 0.0),
    )?;
    let f = frenet_frame(&spec.jet(0.0, DEFAULT_JET_ORDER)?)?;
    let dk = (f.kappa.value() - c2b.abs()).abs();
    let dt = (f.tau.value() - libm::sin(2.0 * beta)).abs();
    if !(dk.max(dt) <= 1e-9) {
        return Err(Error::FrameInconsistency { what: "constant-height invariants", deviation: dk.max(dt) });
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxisReport {
    pub field: KillingField,
    pub length_samples: Vec<f64>,
    pub angle_samples: Vec<f64>,
    pub is_constant_length: bool,
    pub is_constant_angle: bool,
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

pub fn axis_report(spec: &CurveSpec, id: KillingField, s_values: &[f64]) -> Result<AxisReport> {
    let length_samples: Vec<f64> = s_values.iter().map(|&s| killing_length_along(spec, id, s)).collect();
    let angle_samples =
        s_values.iter().map(|&s| killing_angle_with_tangent(spec, id, s)).collect::<Result<Vec<f64>>>()?;
    Ok(AxisReport {
        field: id,
        is_constant_length: spread(&length_samples) <= CONSTANCY_TOL,
        is_constant_angle: spread(&angle_samples) <= CONSTANCY_TOL,
        length_samples,
        angle_samples,
    })
}

/// `β = kπ/72` for `k = 0..=35`, leaving out `k = 18` (β = π/4, a geodesic).
pub fn beta_sweep() -> Vec<f64> {
    (0..=35).filter(|&k| k != 18).map(|k| k as f64 * PI / 72.0).collect()
}

/// `s` values `lo, ..., hi` with `n` points, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Frenet components of the triharmonic residual on the constant-height curve,
/// or `None` on a geodesic.
fn constant_z_residual(beta: f64, c: f64, s: f64) -> Result<Option<[f64; 3]>> {
    match constant_z_curve(beta, c, 0.1, -0.2) {
        Ok(spec) => {
            let f = frenet_frame(&spec.jet(s, DEFAULT_JET_ORDER)?)?;
            Ok(Some(triharmonic_frenet_components(&f)?))
        }
        Err(Error::GeodesicDegeneracy { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn sweep_checks(id: KillingField) -> Report {
    let name = id.name();
    let mut report = Report::default();
    let c = 0.3;
    let s_probe = [-1.0, 0.0, 1.5];
    let axis_s = linspace(-2.0, 2.0, 9);

    let mut max_t = 0.0f64;
    let mut max_b = 0.0f64;
    let mut min_n = f64::INFINITY;
    let mut factors = Vec::new();
    let mut axis_ok = true;
    let mut angle_dev = 0.0f64;
    let mut failed = false;
    for beta in beta_sweep() {
        let spec = match constant_z_curve(beta, c, 0.1, -0.2) {
            Ok(s) => s,
            Err(_) => {
                failed = true;
                continue;
            }
        };
        match axis_report(&spec, id, &axis_s) {
            Ok(ax) => {
                axis_ok &= ax.is_constant_length && ax.is_constant_angle;
                let expected = match id {
                    KillingField::V1 => beta,
                    _ => PI / 2.0 - beta,
                };
                if id != KillingField::V3 {
                    angle_dev = angle_dev.max((ax.angle_samples[0] - expected).abs());
                }
            }
            Err(_) => failed = true,
        }
        for &s in &s_probe {
            match constant_z_residual(beta, c, s) {
                Ok(Some([rt, rn, rb])) => {
                    max_t = max_t.max(rt.abs());
                    max_b = max_b.max(rb.abs());
                    min_n = min_n.min(rn.abs());
                    let c2 = libm::cos(2.0 * beta).abs();
                    factors.push(rn / (c2 * (5.0 + libm::cos(4.0 * beta))));
                }
                _ => failed = true,
            }
        }
    }
    if failed {
        report.push(Check::failed(&format!("{name}.sweep_evaluation")));
    }
    report.push(Check::at_most(&format!("{name}.axis_constant"), if axis_ok { 0.0 } else { 1.0 }, 0.0));
    report.push(Check::at_most(&format!("{name}.angle_matches_beta"), angle_dev, 1e-9));
    report.push(Check::at_most(&format!("{name}.res_T"), max_t, 1e-9));
    report.push(Check::at_most(&format!("{name}.res_B"), max_b, 1e-9));
    report.push(Check::at_least(&format!("{name}.res_N_min"), min_n, 1e-6));
    let factor_spread = spread(&factors);
    report.push(Check::at_most(&format!("{name}.res_N_proportional"), factor_spread, 1e-9));
    report.metric(&format!("{name}.res_N_grid_min"), min_n);
    report.metric(&format!("{name}.fitted_factor"), factors.first().copied().unwrap_or(f64::NAN));

    // Fine scan: zeros of res_N against the predicted band |cos 2β| ≤ 2e-3.
    let mut mismatches = 0usize;
    for j in 0..=720 {
        let beta = j as f64 * PI / 720.0;
        let predicted = libm::cos(2.0 * beta).abs() <= COS_ZERO_BAND;
        let observed = match constant_z_residual(beta, c, 0.0) {
            Ok(Some(r)) => r[1].abs() <= RESIDUAL_ZERO_TOL,
            Ok(None) => true,
            Err(_) => {
                mismatches += 1;
                continue;
            }
        };
        if predicted != observed {
            mismatches += 1;
        }
    }
    report.push(Check::at_most(&format!("{name}.zero_set"), mismatches as f64, 0.0));
    report
}

fn integral_curve_checks() -> Report {
    let mut report = Report::default();
    let spec = match build_triharmonic_helix(&TriharmonicHelixParams::reference()) {
        Ok(s) => s,
        Err(_) => {
            report.push(Check::failed("V3.build"));
            return report;
        }
    };
    let s_values = linspace(-5.0, 5.0, 101);
    let mut len_dev = 0.0f64;
    let mut inner_dev = 0.0f64;
    let mut tangent_dev = 0.0f64;
    let mut max_angle = 0.0f64;
    for &s in &s_values {
        let Ok((v, t)) = field_and_tangent(&spec, KillingField::V3, s) else {
            report.push(Check::failed("V3.evaluation"));
            return report;
        };
        len_dev = len_dev.max((v.norm_sq() - 2.0).abs());
        inner_dev = inner_dev.max((t.dot(&v) - SQRT_2).abs());
        tangent_dev = tangent_dev.max((t - v * (1.0 / SQRT_2)).norm());
        max_angle = max_angle.max(killing_angle_with_tangent(&spec, KillingField::V3, s).unwrap_or(f64::NAN));
    }
    report.push(Check::at_most("V3.length_sq", len_dev, 1e-10));
    report.push(Check::at_most("V3.tangent_inner", inner_dev, 1e-10));
    report.push(Check::at_most("V3.integral_curve", tangent_dev, 1e-10));
    // arccos near 1 turns rounding of size ε into angles of size √ε.
    report.push(Check::at_most("V3.angle", max_angle, 1e-7));
    report
}

/// General-helix checks for one Killing field. For `V1`, `V2`: the constant-height
/// curves, their axis property, and the triharmonic residual over the β sweep.
/// For `V3`: length `√2`, angle 0 and `T = V3/√2` along the reference helix.
pub fn proposition_check(id: KillingField) -> Report {
    match id {
        KillingField::V1 | KillingField::V2 => sweep_checks(id),
        KillingField::V3 => integral_curve_checks(),
    }
}

/// Whether the direct residual vanishes at a geodesic of the constant-height
/// family (the Frenet route is undefined there).
pub fn geodesic_residual_norm(beta: f64) -> Result<f64> {
    let spec = CurveSpec::new(
        Coordinate::affine(0.0, libm::cos(beta)),
        Coordinate::affine(0.0, libm::sin(beta)),
        Coordinate::affine(0.0, 0.0),
    )?;
    Ok(triharmonic_residual_direct_jet(&spec.jet(0.0, DEFAULT_JET_ORDER)?)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn reference() -> CurveSpec {
        build_triharmonic_helix(&TriharmonicHelixParams::reference()).unwrap()
    }

    #[test]
    fn length_examples() {
        for s in [-3.0, 0.0, 2.0] {
            assert!((killing_length_along(&reference(), KillingField::V3, s) - SQRT_2).abs() < 1e-14);
        }
        let c = 0.4;
        let spec = constant_z_curve(0.3, c, 0.0, 0.0).unwrap();
        assert!((killing_length_along(&spec, KillingField::V1, 1.7) - libm::exp(c)).abs() < 1e-14);
        assert_eq!(killing_length_along(&CurveSpec::vertical_line(), KillingField::V3, 0.0), 1.0);
    }

    #[test]
    fn angle_examples() {
        assert!(killing_angle_with_tangent(&reference(), KillingField::V3, 0.8).unwrap() < 1e-7);
        assert_eq!(killing_angle_with_tangent(&CurveSpec::vertical_line(), KillingField::V3, 0.0).unwrap(), 0.0);
        let spec = constant_z_curve(FRAC_PI_6, 0.2, 1.0, -1.0).unwrap();
        for s in [-1.0, 0.0, 3.0] {
            assert!((killing_angle_with_tangent(&spec, KillingField::V1, s).unwrap() - FRAC_PI_6).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_z_examples() {
        let spec = constant_z_curve(0.0, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(spec.point(2.0).x, 2.0);
        assert_eq!(spec.point(2.0).y, 0.5);
        assert!(constant_z_curve(FRAC_PI_6, 0.0, 0.0, 0.0).is_ok());
        assert!(matches!(constant_z_curve(FRAC_PI_4, 0.0, 0.0, 0.0), Err(Error::GeodesicDegeneracy { .. })));
        assert!(geodesic_residual_norm(FRAC_PI_4).unwrap() < 1e-15);
    }

    #[test]
    fn sweep_size() {
        let b = beta_sweep();
        assert_eq!(b.len(), 35);
        assert!(b.iter().all(|&x| (x - FRAC_PI_4).abs() > 0.02));
    }

    #[test]
    fn killing_reports_pass() {
        for id in KillingField::ALL {
            let r = proposition_check(id);
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        let r = proposition_check(KillingField::V1);
        let (_, factor) = r.metrics.iter().find(|(n, _)| n == "V1.fitted_factor").unwrap();
        assert!((factor - 0.5).abs() < 1e-12);
    }
}
