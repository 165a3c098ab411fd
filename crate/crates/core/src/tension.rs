//! r-harmonic tension fields along curves.
//!
//! Three routes to the triharmonic residual are kept apart on purpose:
//! [`r_tension`] sums the general order-r expression, [`triharmonic_residual_direct`]
//! evaluates the r = 3 case through the connection table, and
//! [`triharmonic_residual_frenet`] evaluates the closed-form Frenet components
//! from κ, τ and their derivatives.

use alloc::vec::Vec;

use crate::curve::{frenet_frame, iterated_covariant_jets, unit_tangent, CurveJet, FrameJet, FrenetData};
use crate::powi;
use crate::error::{Error, Result};
use crate::geometry::{curvature_4tensor, Axis, curvature_operator, frame_connection, FrameVector};
use crate::jet::Jet;
use crate::CurveSpec;

/// Tolerance for [`frenet_curvature_identities`].
pub const CURVATURE_IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TensionResidual {
    pub frame_vec: FrameVector,
    /// `(res_T, res_N, res_B)`; only available for r = 3 on Frenet curves.
    pub frenet_vec: Option<[f64; 3]>,
    pub r: usize,
}

impl TensionResidual {
    pub fn norm(&self) -> f64 {
        self.frame_vec.norm()
    }
}

/// `∇^{2r-1}T + Σ_{l=0}^{r-2} (-1)^l R(∇^{2r-3-l}T, ∇^l T) T` at the jet's base point.
pub fn r_tension_jet(cj: &CurveJet, r: usize) -> Result<FrameVector> {
    if r < 2 {
        return Err(Error::InvalidParams("harmonicity order r must be at least 2"));
    }
    let top = 2 * r - 1;
    let d: Vec<FrameVector> = iterated_covariant_jets(cj, top)?.iter().map(FrameJet::value).collect();
    let t = d[0];
    let mut out = d[top];
    for l in 0..=(r - 2) {
        let term = curvature_operator(&d[2 * r - 3 - l], &d[l], &t);
        out = if l % 2 == 0 { out + term } else { out - term };
    }
    Ok(out)
}

pub fn r_tension(spec: &CurveSpec, s: f64, r: usize, order: usize) -> Result<FrameVector> {
    r_tension_jet(&spec.jet(s, order)?, r)
}

/// `∇_T V` through the connection table `∇_{E_i} E_j`, independent of
/// [`crate::curve::covariant_derivative`].
fn covariant_by_table(t: &FrameJet, v: &FrameJet) -> Result<FrameJet> {
    let mut out = v.differentiate()?;
    for (i, ei) in Axis::ALL.into_iter().enumerate() {
        for (j, ej) in Axis::ALL.into_iter().enumerate() {
            let c = frame_connection(ei, ej);
            if c.norm_sq() == 0.0 {
                continue;
            }
            let tv = &t.0[i] * &v.0[j];
            for m in 0..3 {
                if c[m] != 0.0 {
                    out.0[m] = &out.0[m] + &tv.scale(c[m]);
                }
            }
        }
    }
    Ok(out)
}

/// `∇⁵T + R(∇³T, T)T − R(∇²T, ∇T)T`.
pub fn triharmonic_residual_direct_jet(cj: &CurveJet) -> Result<FrameVector> {
    if cj.order() < 6 {
        return Err(Error::OrderExhausted { needed: 6, available: cj.order() });
    }
    let t = unit_tangent(cj)?;
    let mut d = Vec::with_capacity(6);
    d.push(t.clone());
    for _ in 0..5 {
        let next = covariant_by_table(&t, d.last().expect("non-empty"))?;
        d.push(next);
    }
    let v: Vec<FrameVector> = d.iter().map(FrameJet::value).collect();
    Ok(v[5] + curvature_operator(&v[3], &v[0], &v[0]) - curvature_operator(&v[2], &v[1], &v[0]))
}

pub fn triharmonic_residual_direct(spec: &CurveSpec, s: f64, order: usize) -> Result<FrameVector> {
    triharmonic_residual_direct_jet(&spec.jet(s, order)?)
}

/// `κ^{(k)}` style derivative table of a jet, zero-padded past its order.
fn derivs<const N: usize>(j: &Jet) -> [f64; N] {
    let mut out = [0.0; N];
    for (k, o) in out.iter_mut().enumerate() {
        *o = j.derivative(k).unwrap_or(0.0);
    }
    out
}

/// Frenet components `(res_T, res_N, res_B)` of the triharmonic tension from
/// κ, τ, their derivatives and the vertical components `T3, N3, B3`.
pub fn triharmonic_frenet_components(f: &FrenetData) -> Result<[f64; 3]> {
    if f.kappa.order() < 4 || f.tau.order() < 3 {
        return Err(Error::OrderExhausted { needed: 7, available: f.curve.order() });
    }
    let [k, k1, k2, k3, k4] = derivs::<5>(&f.kappa);
    let [t, t1, t2, t3] = derivs::<4>(&f.tau);
    let (tv, nv, bv) = (f.t.value(), f.n.value(), f.b.value());
    let (vt, vn, vb) = (tv[2], nv[2], bv[2]);

    let res_t = 5.0 * (2.0 * powi(k, 3) * k1 + k * (t * t * k1 - k3) - 2.0 * k1 * k2 + k * k * t * t1);

    let res_n = -2.0 * k * k * (vb * vt * t + 5.0 * k2)
        + k * (-2.0 * vb * vn * t1 - 15.0 * k1 * k1 + (1.0 - 2.0 * vb * vb) * t * t
            - 4.0 * t * t2
            - 3.0 * t1 * t1
            + powi(t, 4))
        - 4.0 * t * k1 * (vb * vn + 3.0 * t1)
        + k4
        - 2.0 * k2 * (1.0 - vb * vb + 3.0 * t * t)
        + k2
        + 2.0 * powi(k, 3) * (1.0 - 2.0 * vb * vb + t * t)
        + powi(k, 5);

    let res_b = -2.0 * k2 * (vb * vn - 3.0 * t1)
        + k * (2.0 * t * t * (vb * vn - 3.0 * t1) + (2.0 * vn * vn - 1.0) * t1 + t3)
        + powi(k, 3) * (4.0 * vb * vn - t1)
        + k * k * t * (2.0 * vn * vt - 9.0 * k1)
        + 4.0 * k1 * t2
        - 4.0 * powi(t, 3) * k1
        + 2.0 * t * (2.0 * k3 + (2.0 * vn * vn - 1.0) * k1);

    Ok([res_t, res_n, res_b])
}

pub fn triharmonic_residual_frenet_jet(cj: &CurveJet) -> Result<[f64; 3]> {
    triharmonic_frenet_components(&frenet_frame(cj)?)
}

pub fn triharmonic_residual_frenet(spec: &CurveSpec, s: f64, order: usize) -> Result<[f64; 3]> {
    triharmonic_residual_frenet_jet(&spec.jet(s, order)?)
}

/// Both r = 3 paths at one point. The Frenet part is `None` on geodesics.
pub fn triharmonic_residual(cj: &CurveJet) -> Result<TensionResidual> {
    let frame_vec = triharmonic_residual_direct_jet(cj)?;
    let frenet_vec = match triharmonic_residual_frenet_jet(cj) {
        Ok(v) => Some(v),
        Err(Error::GeodesicDegeneracy { .. }) | Err(Error::TorsionUndefined) => None,
        Err(e) => return Err(e),
    };
    Ok(TensionResidual { frame_vec, frenet_vec, r: 3 })
}

/// Returns `(R(T,N,T,N), R(T,N,T,B), R(B,T,B,T), R(B,N,N,T), R(B,N,B,T))` from the
/// vertical-component formulas, after checking each against the curvature tensor.
pub fn frenet_curvature_identities(f: &FrenetData) -> Result<[f64; 5]> {
    let (t, n, b) = (f.t.value(), f.n.value(), f.b.value());
    let (t3, n3, b3) = (t[2], n[2], b[2]);
    let formula = [
        -1.0 + 2.0 * b3 * b3,
        -2.0 * n3 * b3,
        -1.0 + 2.0 * n3 * n3,
        2.0 * t3 * b3,
        -2.0 * t3 * n3,
    ];
    let tensor = [
        curvature_4tensor(&t, &n, &t, &n),
        curvature_4tensor(&t, &n, &t, &b),
        curvature_4tensor(&b, &t, &b, &t),
        curvature_4tensor(&b, &n, &n, &t),
        curvature_4tensor(&b, &n, &b, &t),
    ];
    let deviation = formula.iter().zip(&tensor).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if !(deviation <= CURVATURE_IDENTITY_TOL) {
        return Err(Error::FrameInconsistency { what: "curvature identities", deviation });
    }
    Ok(formula)
}

/// Frenet components of `∇^k_T T` for constant `κ = a`, `τ = b`.
pub fn nabla_powers_frenet(a: f64, b: f64, k: usize) -> Result<[f64; 3]> {
    if !(a > 0.0) {
        return Err(Error::InvalidParams("curvature must be positive"));
    }
    if k == 0 {
        return Err(Error::InvalidParams("power must be at least 1"));
    }
    // (v_T, v_N, v_B)' = (-a v_N, a v_T - b v_B, b v_N) when a, b are constant.
    let mut v = [1.0, 0.0, 0.0];
    for _ in 0..k {
        v = [-a * v[1], a * v[0] - b * v[2], b * v[1]];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Coordinate;
    use crate::DEFAULT_JET_ORDER;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6};

    fn reference_helix() -> CurveSpec {
        CurveSpec {
            x: Coordinate::default().with_exp(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
            y: Coordinate::default().with_exp(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            z: Coordinate::affine(0.0, FRAC_1_SQRT_2),
        }
    }

    fn constant_z(beta: f64) -> CurveSpec {
        CurveSpec {
            x: Coordinate::affine(0.0, libm::cos(beta)),
            y: Coordinate::affine(0.0, libm::sin(beta)),
            z: Coordinate::affine(0.0, 0.0),
        }
    }

    #[test]
    fn geodesic_has_zero_tension() {
        let line = CurveSpec::vertical_line();
        for r in 2..=4 {
            assert_eq!(r_tension(&line, 0.4, r, DEFAULT_JET_ORDER).unwrap(), FrameVector::ZERO);
        }
        assert_eq!(triharmonic_residual_direct(&line, 0.4, DEFAULT_JET_ORDER).unwrap(), FrameVector::ZERO);
        let res = triharmonic_residual(&line.jet(0.0, DEFAULT_JET_ORDER).unwrap()).unwrap();
        assert!(res.frenet_vec.is_none());
    }

    #[test]
    fn reference_helix_residuals() {
        // Independent symbolic evaluation gives (1/4) N for the triharmonic
        // tension on this curve, with N = (1/√2, -1/√2, 0).
        let h = reference_helix();
        for s in [-2.0, 0.0, 1.7] {
            let direct = triharmonic_residual_direct(&h, s, DEFAULT_JET_ORDER).unwrap();
            let expected = FrameVector::new(0.25 * FRAC_1_SQRT_2, -0.25 * FRAC_1_SQRT_2, 0.0);
            assert!(direct.max_abs_diff(&expected) < 1e-12, "{direct:?}");
            let general = r_tension(&h, s, 3, DEFAULT_JET_ORDER).unwrap();
            assert!(general.max_abs_diff(&direct) < 1e-12);
            let [rt, rn, rb] = triharmonic_residual_frenet(&h, s, DEFAULT_JET_ORDER).unwrap();
            assert!(rt.abs() < 1e-12 && rb.abs() < 1e-12);
            assert!((rn - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn biharmonic_tension_on_reference_helix() {
        let v = r_tension(&reference_helix(), 0.0, 2, DEFAULT_JET_ORDER).unwrap();
        assert!((v.norm() - 0.25).abs() < 1e-12);
        assert!(matches!(r_tension(&reference_helix(), 0.0, 1, 8), Err(Error::InvalidParams(_))));
        assert!(matches!(r_tension(&reference_helix(), 0.0, 4, 7), Err(Error::OrderExhausted { .. })));
    }

    #[test]
    fn constant_z_normal_residual() {
        let beta = FRAC_PI_6;
        let [rt, rn, rb] = triharmonic_residual_frenet(&constant_z(beta), 0.0, DEFAULT_JET_ORDER).unwrap();
        let c2 = libm::cos(2.0 * beta);
        assert!(rt.abs() < 1e-12 && rb.abs() < 1e-12);
        assert!((rn - 0.5 * c2.abs() * (5.0 + libm::cos(4.0 * beta))).abs() < 1e-12);
        let direct = triharmonic_residual_direct(&constant_z(beta), 0.0, DEFAULT_JET_ORDER).unwrap();
        assert!((direct.norm() - rn.abs()).abs() < 1e-12);
    }

    #[test]
    fn curvature_identity_examples() {
        let f = frenet_frame(&reference_helix().jet(0.3, DEFAULT_JET_ORDER).unwrap()).unwrap();
        let ids = frenet_curvature_identities(&f).unwrap();
        assert!(ids[0].abs() < 1e-14);
        assert!(ids[1].abs() < 1e-14);
        let f = frenet_frame(&constant_z(0.2).jet(0.0, DEFAULT_JET_ORDER).unwrap()).unwrap();
        assert_eq!(frenet_curvature_identities(&f).unwrap()[3], 0.0);
    }

    #[test]
    fn nabla_powers_examples() {
        assert_eq!(nabla_powers_frenet(0.7, 0.3, 1).unwrap(), [0.0, 0.7, 0.0]);
        assert_eq!(nabla_powers_frenet(0.5, 0.5, 2).unwrap(), [-0.25, 0.0, 0.25]);
        let (a, b) = (0.6, -0.4);
        let v3 = nabla_powers_frenet(a, b, 3).unwrap();
        assert!((v3[1] - (-a * a * a - a * b * b)).abs() < 1e-15 && v3[0] == 0.0 && v3[2] == 0.0);
        let v5 = nabla_powers_frenet(a, b, 5).unwrap();
        assert_eq!(v5[0], 0.0);
        assert!((v5[1] - (a.powi(5) + 2.0 * a.powi(3) * b * b + a * b.powi(4))).abs() < 1e-15);
        assert!(nabla_powers_frenet(0.0, 1.0, 2).is_err());
    }
}
