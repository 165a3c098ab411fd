//! RK4 integration of curves from their natural equations.
//!
//! The state is the position together with the frame components of T, N, B.
//! Frame components change both through the Frenet system and through the
//! rotation of `{E1, E2, E3}` along the curve, so for any field V
//! `V' = ∇_T V − Γ(T) V` with `Γ(T) V = (T1 V3, −T2 V3, −T1 V1 + T2 V2)`.
//! Orthonormality is monitored, never re-imposed.

use alloc::vec::Vec;

use crate::curve::{orthonormality_error, CurveSpec};
use crate::error::{Error, Result};
use crate::geometry::{FrameVector, Point3};

pub const MAX_FRAME_DRIFT: f64 = 1e-6;
pub const INIT_ORTHONORMAL_TOL: f64 = 1e-10;
pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrenetState {
    pub p: Point3,
    pub t: FrameVector,
    pub n: FrameVector,
    pub b: FrameVector,
}

impl FrenetState {
    pub fn orthonormality_error(&self) -> f64 {
        orthonormality_error(&self.t, &self.n, &self.b)
    }

    fn to_array(self) -> [f64; 12] {
        let mut u = [0.0; 12];
        u[..3].copy_from_slice(&[self.p.x, self.p.y, self.p.z]);
        u[3..6].copy_from_slice(&self.t.0);
        u[6..9].copy_from_slice(&self.n.0);
        u[9..].copy_from_slice(&self.b.0);
        u
    }

    fn from_array(u: &[f64; 12]) -> Self {
        let v = |i: usize| FrameVector::new(u[i], u[i + 1], u[i + 2]);
        FrenetState { p: Point3::new(u[0], u[1], u[2]), t: v(3), n: v(6), b: v(9) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub s: Vec<f64>,
    pub states: Vec<FrenetState>,
    /// Largest orthonormality error seen at any sample.
    pub max_drift: f64,
}

impl Trajectory {
    /// Largest coordinate difference from a closed-form curve at the same parameters.
    pub fn max_deviation_from(&self, spec: &CurveSpec) -> f64 {
        self.s
            .iter()
            .zip(&self.states)
            .map(|(&s, st)| {
                let q = spec.point(s);
                (st.p.x - q.x).abs().max((st.p.y - q.y).abs()).max((st.p.z - q.z).abs())
            })
            .fold(0.0, f64::max)
    }
}

fn rhs(a: f64, b: f64, u: &[f64; 12]) -> [f64; 12] {
    let (t1, t2, t3) = (u[3], u[4], u[5]);
    let z = u[2];
    let frame = |v: [f64; 3], nabla: [f64; 3]| {
        [nabla[0] - t1 * v[2], nabla[1] + t2 * v[2], nabla[2] + t1 * v[0] - t2 * v[1]]
    };
    let t = [u[3], u[4], u[5]];
    let n = [u[6], u[7], u[8]];
    let bb = [u[9], u[10], u[11]];
    let dt = frame(t, [a * n[0], a * n[1], a * n[2]]);
    let dn = frame(n, core::array::from_fn(|i| -a * t[i] + b * bb[i]));
    let db = frame(bb, [-b * n[0], -b * n[1], -b * n[2]]);
    let mut out = [0.0; 12];
    out[0] = t1 * libm::exp(-z);
    out[1] = t2 * libm::exp(z);
    out[2] = t3;
    out[3..6].copy_from_slice(&dt);
    out[6..9].copy_from_slice(&dn);
    out[9..].copy_from_slice(&db);
    out
}

fn rk4_step(a: f64, b: f64, u: &[f64; 12], h: f64) -> [f64; 12] {
    let add = |x: &[f64; 12], k: &[f64; 12], f: f64| -> [f64; 12] { core::array::from_fn(|i| x[i] + f * k[i]) };
    let k1 = rhs(a, b, u);
    let k2 = rhs(a, b, &add(u, &k1, 0.5 * h));
    let k3 = rhs(a, b, &add(u, &k2, 0.5 * h));
    let k4 = rhs(a, b, &add(u, &k3, h));
    core::array::from_fn(|i| u[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

fn integrate(a: f64, b: f64, init: &FrenetState, step: f64, s_max: f64) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParams("step must be positive"));
    }
    if !(s_max >= 0.0 && s_max.is_finite()) {
        return Err(Error::InvalidParams("s_max must be non-negative"));
    }
    let init_err = init.orthonormality_error();
    if !(init_err <= INIT_ORTHONORMAL_TOL) {
        return Err(Error::FrameInconsistency { what: "initial frame", deviation: init_err });
    }
    let n_steps = libm::ceil(s_max / step - 1e-9).max(0.0) as usize;
    let mut s_vals = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut u = init.to_array();
    s_vals.push(0.0);
    states.push(*init);
    let mut max_drift = init_err;
    for i in 0..n_steps {
        let s = i as f64 * step;
        let h = step.min(s_max - s);
        u = rk4_step(a, b, &u, h);
        let state = FrenetState::from_array(&u);
        let drift = state.orthonormality_error();
        max_drift = max_drift.max(drift);
        if !(drift <= MAX_FRAME_DRIFT) {
            return Err(Error::FrameDrift { s: s + h, drift });
        }
        s_vals.push(if i + 1 == n_steps { s_max } else { (i + 1) as f64 * step });
        states.push(state);
    }
    Ok(Trajectory { s: s_vals, states, max_drift })
}

/// Integrates the curve with constant curvature `a > 0` and torsion `b`.
pub fn integrate_frenet_natural(a: f64, b: f64, init: &FrenetState, step: f64, s_max: f64) -> Result<Trajectory> {
    if !(a > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParams("curvature must be positive and torsion finite"));
    }
    integrate(a, b, init, step, s_max)
}

/// Integrates `∇_T T = 0` from `p` with unit tangent `t`; N and B are carried
/// along as parallel fields.
pub fn integrate_geodesic(p: Point3, t: FrameVector, step: f64, s_max: f64) -> Result<Trajectory> {
    let norm = t.norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidParams("tangent must be non-zero"));
    }
    let t = t * (1.0 / norm);
    // Any unit vector not parallel to t seeds the complement.
    let seed = if t[0].abs() < 0.9 { FrameVector::E1 } else { FrameVector::E2 };
    let n = seed - t * seed.dot(&t);
    let n = n * (1.0 / n.norm());
    let b = t.cross(&n);
    integrate(0.0, 0.0, &FrenetState { p, t, n, b }, step, s_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::frenet_frame;
    use crate::helix::{build_triharmonic_helix, TriharmonicHelixParams};
    use crate::DEFAULT_JET_ORDER;

    fn reference_start() -> (CurveSpec, FrenetState) {
        let spec = build_triharmonic_helix(&TriharmonicHelixParams::reference()).unwrap();
        let f = frenet_frame(&spec.jet(0.0, DEFAULT_JET_ORDER).unwrap()).unwrap();
        let st = FrenetState { p: f.point(), t: f.t.value(), n: f.n.value(), b: f.b.value() };
        (spec, st)
    }

    #[test]
    fn reproduces_reference_helix() {
        let (spec, st) = reference_start();
        let tr = integrate_frenet_natural(0.5, 0.5, &st, 1e-2, 5.0).unwrap();
        assert_eq!(tr.s.len(), 501);
        assert!((tr.s.last().unwrap() - 5.0).abs() < 1e-15);
        assert!(tr.max_deviation_from(&spec) < 1e-8);
        assert!(tr.max_drift < 1e-10);
    }

    #[test]
    fn geodesic_is_vertical_line() {
        let tr = integrate_geodesic(Point3::new(0.0, 0.0, 0.0), FrameVector::E3, 0.1, 2.0).unwrap();
        assert!(tr.max_deviation_from(&CurveSpec::vertical_line()) < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let (_, st) = reference_start();
        assert!(integrate_frenet_natural(0.0, 0.5, &st, 1e-2, 1.0).is_err());
        assert!(integrate_frenet_natural(0.5, 0.5, &st, 0.0, 1.0).is_err());
        let skew = FrenetState { t: st.t * 1.1, ..st };
        assert!(matches!(
            integrate_frenet_natural(0.5, 0.5, &skew, 1e-2, 1.0),
            Err(Error::FrameInconsistency { .. })
        ));
        // A step far too large for the dynamics loses orthonormality.
        assert!(matches!(
            integrate_frenet_natural(40.0, 0.0, &st, 0.5, 5.0),
            Err(Error::FrameDrift { .. })
        ));
    }
}
