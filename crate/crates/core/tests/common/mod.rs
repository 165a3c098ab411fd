#![allow(dead_code)]

use proptest::prelude::*;
use sol_curves_core::curve::{Coordinate, CurveJet, CurveSpec};
use sol_curves_core::Jet;

pub const ORDER: usize = sol_curves_core::DEFAULT_JET_ORDER;

/// Unit-speed members of the closed-form family: the tangent has constant
/// frame components `(p, q, r)`, so `z = z0 + r s`,
/// `x = x0 - p e^{-z0} (e^{-r s} - 1) / r`, `y = y0 + q e^{z0} (e^{r s} - 1) / r`.
pub fn constant_direction_curve(theta: f64, phi: f64, x0: f64, y0: f64, z0: f64) -> CurveSpec {
    let (p, q, r) = (theta.cos() * phi.cos(), theta.sin() * phi.cos(), phi.sin());
    let ax = -p * (-z0).exp() / r;
    let ay = q * z0.exp() / r;
    CurveSpec::new(
        Coordinate::affine(x0 - ax, 0.0).with_exp(ax, -r),
        Coordinate::affine(y0 - ay, 0.0).with_exp(ay, r),
        Coordinate::affine(z0, r),
    )
    .unwrap()
}

/// Directions with `|r|` bounded away from 0 (exponential form) and from 1
/// (non-vertical), and away from the geodesic directions `p² = q²`, `r = 0`.
pub fn direction_curve() -> impl Strategy<Value = CurveSpec> {
    (0.0..std::f64::consts::TAU, 0.15..1.3f64, any::<bool>(), -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("keep away from geodesic directions", |(t, _, _, _, _, _)| (2.0 * t).cos().abs() > 0.1)
        .prop_map(|(theta, phi, up, x0, y0, z0)| {
            let phi = if up { phi } else { -phi };
            constant_direction_curve(theta, phi, x0, y0, z0)
        })
}

/// Unit-speed jet with prescribed height `z(s)` and heading `φ(s)`:
/// `x' = cos φ √(1 - z'²) e^{-z}`, `y' = sin φ √(1 - z'²) e^{z}`.
pub fn heading_jet(z: &[f64], phi: &[f64], x0: f64, y0: f64) -> CurveJet {
    let zj = Jet::from_coeffs(z.to_vec());
    let k = zj.order();
    let zd = zj.differentiate().unwrap();
    let w = (&Jet::constant(1.0, k - 1) - &(&zd * &zd)).sqrt().unwrap();
    let ph = Jet::from_coeffs(phi.to_vec()).truncate(k - 1);
    let zt = zj.truncate(k - 1);
    let xd = &(&ph.cos() * &w) * &(-&zt).exp();
    let yd = &(&ph.sin() * &w) * &zt.exp();
    CurveJet::from_jets(xd.integrate(x0), yd.integrate(y0), zj).unwrap()
}

/// Random unit-speed jets with non-constant curvature and torsion.
pub fn heading_curve() -> impl Strategy<Value = CurveJet> {
    (
        prop::collection::vec(-0.6..0.6f64, ORDER + 1),
        prop::collection::vec(-0.8..0.8f64, ORDER),
        -1.0..1.0f64,
        -1.0..1.0f64,
    )
        .prop_map(|(mut z, mut phi, x0, y0)| {
            // keep |z'| < 1 at the base point
            z[1] *= 0.9;
            phi[0] *= 4.0;
            heading_jet(&z, &phi, x0, y0)
        })
}
