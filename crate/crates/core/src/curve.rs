//! Curves in Sol and their differential invariants.
//!
//! Closed-form curves are described by [`CurveSpec`]: each coordinate is
//! `const + linear * s + Σ amplitude * e^{rate * s}`, with `z` restricted to
//! `const + linear * s`. This family contains the explicit helices, the
//! constant-height lines and the vertical geodesics, and it is closed under
//! every [`Isometry`] generator.
//!
//! All invariants are computed on jets at a single parameter value, so
//! derivatives of any order are exact up to rounding.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{FrameVector, Isometry, Point3};
use crate::jet::Jet;

/// Unit-speed tolerance on `|<T,T> - 1|`.
pub const UNIT_SPEED_TOL: f64 = 1e-8;
/// Frenet data is undefined at or below this curvature.
pub const GEODESIC_THRESHOLD: f64 = 1e-8;
/// Largest allowed disagreement between the two torsion routes.
pub const TORSION_AGREEMENT_TOL: f64 = 1e-6;
/// Orthonormality tolerance on the Frenet frame at the base point.
pub const FRAME_ORTHONORMAL_TOL: f64 = 1e-10;
pub const MAX_EXP_TERMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpTerm {
    pub amplitude: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Coordinate {
    pub constant: f64,
    pub linear: f64,
    pub exp_terms: Vec<ExpTerm>,
}

impl Coordinate {
    pub fn affine(constant: f64, linear: f64) -> Self {
        Coordinate { constant, linear, exp_terms: Vec::new() }
    }

    pub fn with_exp(mut self, amplitude: f64, rate: f64) -> Self {
        self.exp_terms.push(ExpTerm { amplitude, rate });
        self
    }

    pub fn value(&self, s: f64) -> f64 {
        self.constant
            + self.linear * s
            + self.exp_terms.iter().map(|t| t.amplitude * libm::exp(t.rate * s)).sum::<f64>()
    }

    /// Exact Taylor jet at `s`.
    pub fn jet(&self, s: f64, order: usize) -> Jet {
        let mut c = alloc::vec![0.0; order + 1];
        c[0] = self.constant + self.linear * s;
        if order >= 1 {
            c[1] = self.linear;
        }
        for t in &self.exp_terms {
            // a e^{r(s+h)} = a e^{rs} Σ (r h)^k / k!
            let mut term = t.amplitude * libm::exp(t.rate * s);
            for (k, ck) in c.iter_mut().enumerate() {
                if k > 0 {
                    term *= t.rate / k as f64;
                }
                *ck += term;
            }
        }
        Jet::from_coeffs(c)
    }

    fn scaled(&self, f: f64) -> Coordinate {
        Coordinate {
            constant: self.constant * f,
            linear: self.linear * f,
            exp_terms: self
                .exp_terms
                .iter()
                .map(|t| ExpTerm { amplitude: t.amplitude * f, rate: t.rate })
                .collect(),
        }
    }

    fn is_finite(&self) -> bool {
        self.constant.is_finite()
            && self.linear.is_finite()
            && self.exp_terms.iter().all(|t| t.amplitude.is_finite() && t.rate.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveSpec {
    pub x: Coordinate,
    pub y: Coordinate,
    pub z: Coordinate,
}

impl CurveSpec {
    pub fn new(x: Coordinate, y: Coordinate, z: Coordinate) -> Result<Self> {
        let spec = CurveSpec { x, y, z };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.z.exp_terms.is_empty() {
            return Err(Error::InvalidCurve("z must be affine in s"));
        }
        if !(self.x.is_finite() && self.y.is_finite() && self.z.is_finite()) {
            return Err(Error::InvalidCurve("non-finite coefficient"));
        }
        if self.x.exp_terms.len() > MAX_EXP_TERMS || self.y.exp_terms.len() > MAX_EXP_TERMS {
            return Err(Error::InvalidCurve("too many exponential terms"));
        }
        Ok(())
    }

    /// `s -> (0, 0, s)`, a unit-speed geodesic.
    pub fn vertical_line() -> Self {
        CurveSpec {
            x: Coordinate::default(),
            y: Coordinate::default(),
            z: Coordinate::affine(0.0, 1.0),
        }
    }

    pub fn point(&self, s: f64) -> Point3 {
        Point3::new(self.x.value(s), self.y.value(s), self.z.value(s))
    }

    pub fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        if order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        Ok(CurveJet {
            x: self.x.jet(s, order),
            y: self.y.jet(s, order),
            z: self.z.jet(s, order),
        })
    }

    /// Image of the curve under an isometry generator.
    pub fn transform(&self, iso: &Isometry) -> CurveSpec {
        let mut out = self.clone();
        match *iso {
            Isometry::TranslateX(c) => out.x.constant += c,
            Isometry::TranslateY(c) => out.y.constant += c,
            Isometry::FlowZ(c) => {
                out.x = self.x.scaled(libm::exp(-c));
                out.y = self.y.scaled(libm::exp(c));
                out.z.constant += c;
            }
            Isometry::ReflectX => out.x = self.x.scaled(-1.0),
            Isometry::ReflectY => out.y = self.y.scaled(-1.0),
        }
        out
    }

    /// The same curve traversed backwards, `s -> -s`.
    pub fn reversed(&self) -> CurveSpec {
        let flip = |c: &Coordinate| Coordinate {
            constant: c.constant,
            linear: -c.linear,
            exp_terms: c.exp_terms.iter().map(|t| ExpTerm { amplitude: t.amplitude, rate: -t.rate }).collect(),
        };
        CurveSpec { x: flip(&self.x), y: flip(&self.y), z: flip(&self.z) }
    }

    pub fn transform_all(&self, isos: &[Isometry]) -> CurveSpec {
        isos.iter().fold(self.clone(), |c, iso| c.transform(iso))
    }
}

pub fn eval_curve(spec: &CurveSpec, s: f64, order: usize) -> Result<CurveJet> {
    spec.jet(s, order)
}

pub fn transform_curve(iso: &Isometry, spec: &CurveSpec) -> CurveSpec {
    spec.transform(iso)
}

/// Coordinate jets of a curve at one parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveJet {
    pub x: Jet,
    pub y: Jet,
    pub z: Jet,
}

impl CurveJet {
    pub fn from_jets(x: Jet, y: Jet, z: Jet) -> Result<Self> {
        if x.order() != y.order() || x.order() != z.order() {
            return Err(Error::OrderMismatch { left: x.order(), right: y.order().max(z.order()) });
        }
        Ok(CurveJet { x, y, z })
    }

    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn point(&self) -> Point3 {
        Point3::new(self.x.value(), self.y.value(), self.z.value())
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(Error::OrderExhausted { needed, available: self.order() });
        }
        Ok(())
    }
}

/// A frame-component vector field along a curve, one jet per component.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameJet(pub [Jet; 3]);

impl FrameJet {
    pub fn constant(v: &FrameVector, order: usize) -> Self {
        FrameJet([
            Jet::constant(v[0], order),
            Jet::constant(v[1], order),
            Jet::constant(v[2], order),
        ])
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(Jet::order).min().unwrap_or(0)
    }

    pub fn value(&self) -> FrameVector {
        FrameVector([self.0[0].value(), self.0[1].value(), self.0[2].value()])
    }

    pub fn dot(&self, o: &FrameJet) -> Jet {
        &(&(&self.0[0] * &o.0[0]) + &(&self.0[1] * &o.0[1])) + &(&self.0[2] * &o.0[2])
    }

    pub fn cross(&self, o: &FrameJet) -> FrameJet {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &o.0;
        FrameJet([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn scale(&self, f: &Jet) -> FrameJet {
        FrameJet([&self.0[0] * f, &self.0[1] * f, &self.0[2] * f])
    }

    pub fn div(&self, d: &Jet) -> Result<FrameJet> {
        let d = d.truncate(self.order());
        let t = self.truncate(d.order());
        Ok(FrameJet([t.0[0].checked_div(&d)?, t.0[1].checked_div(&d)?, t.0[2].checked_div(&d)?]))
    }

    pub fn add(&self, o: &FrameJet) -> FrameJet {
        FrameJet([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }

    pub fn sub(&self, o: &FrameJet) -> FrameJet {
        FrameJet([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }

    pub fn truncate(&self, order: usize) -> FrameJet {
        FrameJet([self.0[0].truncate(order), self.0[1].truncate(order), self.0[2].truncate(order)])
    }

    pub fn differentiate(&self) -> Result<FrameJet> {
        Ok(FrameJet([
            self.0[0].differentiate()?,
            self.0[1].differentiate()?,
            self.0[2].differentiate()?,
        ]))
    }
}

/// `|<T,T> - 1|` at the base point, without rejecting the curve.
pub fn speed_deviation(cj: &CurveJet) -> Result<f64> {
    Ok((tangent_unchecked(cj)?.value().norm_sq() - 1.0).abs())
}

fn tangent_unchecked(cj: &CurveJet) -> Result<FrameJet> {
    cj.require(1)?;
    let ez = cj.z.exp();
    let emz = (-&cj.z).exp();
    Ok(FrameJet([
        &cj.x.differentiate()? * &ez,
        &cj.y.differentiate()? * &emz,
        cj.z.differentiate()?,
    ]))
}

/// `T = x' e^z E1 + y' e^{-z} E2 + z' E3` as jets of order `K - 1`.
pub fn unit_tangent(cj: &CurveJet) -> Result<FrameJet> {
    let t = tangent_unchecked(cj)?;
    let deviation = (t.value().norm_sq() - 1.0).abs();
    if !(deviation <= UNIT_SPEED_TOL) {
        return Err(Error::NotUnitSpeed { deviation });
    }
    Ok(t)
}

/// `∇_T V = (V1' + T1 V3, V2' - T2 V3, V3' - T1 V1 + T2 V2)`; the order drops by one.
pub fn covariant_derivative(t: &FrameJet, v: &FrameJet) -> Result<FrameJet> {
    if v.order() == 0 {
        return Err(Error::OrderExhausted { needed: 1, available: 0 });
    }
    let d = v.differentiate()?;
    let [t1, t2, _] = &t.0;
    let [v1, v2, v3] = &v.0;
    Ok(FrameJet([
        &d.0[0] + &(t1 * v3),
        &d.0[1] - &(t2 * v3),
        &(&d.0[2] - &(t1 * v1)) + &(t2 * v2),
    ]))
}

/// `[T, ∇_T T, ..., ∇^k_T T]`.
pub fn iterated_covariant_jets(cj: &CurveJet, k: usize) -> Result<Vec<FrameJet>> {
    if cj.order() < k + 1 {
        return Err(Error::OrderExhausted { needed: k + 1, available: cj.order() });
    }
    let t = unit_tangent(cj)?;
    let mut out = Vec::with_capacity(k + 1);
    out.push(t.clone());
    for _ in 0..k {
        let next = covariant_derivative(&t, out.last().expect("non-empty"))?;
        out.push(next);
    }
    Ok(out)
}

/// `∇^k_T T` at `s`.
pub fn iterated_covariant(spec: &CurveSpec, s: f64, k: usize, order: usize) -> Result<FrameVector> {
    let cj = spec.jet(s, order)?;
    if k == 0 || order < k + 2 {
        return Err(Error::OrderExhausted { needed: k + 2, available: order });
    }
    Ok(iterated_covariant_jets(&cj, k)?[k].value())
}

/// `κ²` from the coordinate formula
/// `e^{2z}(x''+2x'z')² + e^{-2z}(y''-2y'z')² + (z'' - e^{2z}x'² + e^{-2z}y'²)²`.
pub fn geodesic_curvature_sq(cj: &CurveJet) -> Result<Jet> {
    cj.require(2)?;
    let x1 = cj.x.differentiate()?;
    let x2 = x1.differentiate()?;
    let y1 = cj.y.differentiate()?;
    let y2 = y1.differentiate()?;
    let z1 = cj.z.differentiate()?;
    let z2 = z1.differentiate()?;
    let e2z = cj.z.scale(2.0).exp();
    let em2z = cj.z.scale(-2.0).exp();

    let hx = &x2 + &(&x1 * &z1).scale(2.0);
    let hy = &y2 - &(&y1 * &z1).scale(2.0);
    let v = &(&z2 - &(&e2z * &(&x1 * &x1))) + &(&em2z * &(&y1 * &y1));
    Ok(&(&(&e2z * &(&hx * &hx)) + &(&em2z * &(&hy * &hy))) + &(&v * &v))
}

/// Numerator and denominator of the coordinate torsion formula `τ = A / B`.
fn torsion_parts(cj: &CurveJet) -> Result<(Jet, Jet)> {
    cj.require(3)?;
    let x1 = cj.x.differentiate()?;
    let x2 = x1.differentiate()?;
    let x3 = x2.differentiate()?;
    let y1 = cj.y.differentiate()?;
    let y2 = y1.differentiate()?;
    let y3 = y2.differentiate()?;
    let z1 = cj.z.differentiate()?;
    let z2 = z1.differentiate()?;
    let z3 = z2.differentiate()?;
    let e = |k: f64| cj.z.scale(k).exp();
    let (e2, e4, e6, e8) = (e(2.0), e(4.0), e(6.0), e(8.0));
    let c = |v: f64, j: &Jet| j.scale(v);

    let x1_2 = &x1 * &x1;
    let y1_2 = &y1 * &y1;
    let z1_2 = &z1 * &z1;
    let z1_3 = &z1_2 * &z1;
    let z1_4 = &z1_2 * &z1_2;

    // 2 e^{8z} x'^5 y' + 2 x' y'^5
    let t0 = &c(2.0, &(&e8 * &(&x1.powi(5) * &y1))) + &c(2.0, &(&x1 * &y1.powi(5)));

    // e^{6z} x' (3 x''^2 y' + x'^2 (y''' - 6 y'' z' + 8 y' (2 z'^2 - z''))
    //            + x' (y' (14 x'' z' - x''') - 3 x'' y''))
    let t6_inner = {
        let a = c(3.0, &(&(&x2 * &x2) * &y1));
        let b = &x1_2
            * &(&(&y3 - &c(6.0, &(&y2 * &z1))) + &c(8.0, &(&y1 * &(&c(2.0, &z1_2) - &z2))));
        let d = &x1 * &(&(&y1 * &(&c(14.0, &(&x2 * &z1)) - &x3)) - &c(3.0, &(&x2 * &y2)));
        &(&a + &b) + &d
    };
    let t6 = &e6 * &(&x1 * &t6_inner);

    // e^{2z} y' (x' (3 y''^2 + 8 y'^2 (z'' + 2 z'^2) - y' (y''' + 14 y'' z'))
    //            + y' (y' (x''' + 6 x'' z') - 3 x'' y''))
    let t2_inner = {
        let a = &x1
            * &(&(&c(3.0, &(&y2 * &y2)) + &c(8.0, &(&y1_2 * &(&z2 + &c(2.0, &z1_2)))))
                - &(&y1 * &(&y3 + &c(14.0, &(&y2 * &z1)))));
        let b = &y1 * &(&(&y1 * &(&x3 + &c(6.0, &(&x2 * &z1)))) - &c(3.0, &(&x2 * &y2)));
        &a + &b
    };
    let t2 = &e2 * &(&y1 * &t2_inner);

    // e^{4z} (-4 x'^3 y'^3
    //   + x' (-y''' z'' + 2 y''' z'^2 + z''' y'' - 8 y'' z'^3 + y' (6 z''^2 + 8 z'^4 - 4 z''' z'))
    //   + y' (x''' z'' + 2 x''' z'^2 - z''' x'' + 8 x'' z'^3)
    //   + z' (y''' x'' - y'' (x''' + 6 x'' z')))
    let t4_inner = {
        let a = c(-4.0, &(&(&x1_2 * &x1) * &(&y1_2 * &y1)));
        let b = &x1
            * &(&(&(&(&(-&(&y3 * &z2)) + &c(2.0, &(&y3 * &z1_2))) + &(&z3 * &y2))
                - &c(8.0, &(&y2 * &z1_3)))
                + &(&y1 * &(&(&c(6.0, &(&z2 * &z2)) + &c(8.0, &z1_4)) - &c(4.0, &(&z3 * &z1)))));
        let d = &y1
            * &(&(&(&(&x3 * &z2) + &c(2.0, &(&x3 * &z1_2))) - &(&z3 * &x2))
                + &c(8.0, &(&x2 * &z1_3)));
        let f = &z1 * &(&(&y3 * &x2) - &(&y2 * &(&x3 + &c(6.0, &(&x2 * &z1)))));
        &(&(&a + &b) + &d) + &f
    };
    let t4 = &e4 * &t4_inner;

    let num = &(&(&t0 + &t6) + &t2) + &t4;

    // e^{4z} (z''^2 - 2 x'^2 y'^2) + e^{8z} x'^4 + e^{6z} ((x'' + 2 x' z')^2 - 2 x'^2 z'')
    //   + y'^4 + e^{2z} (2 y'^2 z'' + (y'' - 2 y' z')^2)
    let hx = &x2 + &c(2.0, &(&x1 * &z1));
    let hy = &y2 - &c(2.0, &(&y1 * &z1));
    let den = &(&(&(&(&e4 * &(&(&z2 * &z2) - &c(2.0, &(&x1_2 * &y1_2))))
        + &(&e8 * &(&x1_2 * &x1_2)))
        + &(&e6 * &(&(&hx * &hx) - &c(2.0, &(&x1_2 * &z2)))))
        + &(&y1_2 * &y1_2))
        + &(&e2 * &(&c(2.0, &(&y1_2 * &z2)) + &(&hy * &hy)));
    Ok((num, den))
}

/// Torsion from the coordinate formula, as a jet of order `K - 3`.
pub fn torsion(cj: &CurveJet) -> Result<Jet> {
    let (num, den) = torsion_parts(cj)?;
    // For unit-speed curves den = κ² e^{4z}, so this matches the geodesic threshold.
    let scale = libm::exp(4.0 * cj.z.value()) * GEODESIC_THRESHOLD * GEODESIC_THRESHOLD;
    if !(den.value().abs() > scale) {
        return Err(Error::TorsionUndefined);
    }
    let order = num.order().min(den.order());
    num.truncate(order).checked_div(&den.truncate(order))
}

/// Frenet frame and invariants along a curve at one parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetData {
    pub t: FrameJet,
    pub n: FrameJet,
    pub b: FrameJet,
    /// κ via the square root of the coordinate formula for κ².
    pub kappa: Jet,
    /// τ via the coordinate formula.
    pub tau: Jet,
    /// τ recomputed as `-<∇_T B, N>`.
    pub tau_frame: f64,
    pub curve: CurveJet,
}

impl FrenetData {
    pub fn point(&self) -> Point3 {
        self.curve.point()
    }

    /// Worst deviation of `{T, N, B}` from orthonormality at the base point.
    pub fn orthonormality_error(&self) -> f64 {
        orthonormality_error(&self.t.value(), &self.n.value(), &self.b.value())
    }

    /// Converts Frenet components `(v_T, v_N, v_B)` to frame components.
    pub fn to_frame(&self, v: [f64; 3]) -> FrameVector {
        self.t.value() * v[0] + self.n.value() * v[1] + self.b.value() * v[2]
    }

    /// Frenet components of a frame vector.
    pub fn to_frenet(&self, v: &FrameVector) -> [f64; 3] {
        [v.dot(&self.t.value()), v.dot(&self.n.value()), v.dot(&self.b.value())]
    }
}

pub fn orthonormality_error(t: &FrameVector, n: &FrameVector, b: &FrameVector) -> f64 {
    [
        (t.norm_sq() - 1.0).abs(),
        (n.norm_sq() - 1.0).abs(),
        (b.norm_sq() - 1.0).abs(),
        t.dot(n).abs(),
        t.dot(b).abs(),
        n.dot(b).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Frenet frame: `N = ∇_T T / |∇_T T|`, `B = T × N` with orientation
/// `(E1, E2, E3)`; τ is taken from the coordinate formula and cross-checked
/// against `-<∇_T B, N>`.
pub fn frenet_frame(cj: &CurveJet) -> Result<FrenetData> {
    cj.require(3)?;
    let t = unit_tangent(cj)?;
    let d1 = covariant_derivative(&t, &t)?;
    let norm_sq = d1.dot(&d1);
    let kappa_frame = libm::sqrt(norm_sq.value());
    if !(kappa_frame > GEODESIC_THRESHOLD) {
        return Err(Error::GeodesicDegeneracy { kappa: kappa_frame });
    }
    let n = d1.div(&norm_sq.sqrt()?)?;
    let b = t.truncate(n.order()).cross(&n);

    let kappa_sq = geodesic_curvature_sq(cj)?;
    let kappa = kappa_sq.sqrt().map_err(|_| Error::GeodesicDegeneracy { kappa: 0.0 })?;
    let kappa_dev = (kappa.value() - kappa_frame).abs();
    if kappa_dev > TORSION_AGREEMENT_TOL {
        return Err(Error::FrameInconsistency { what: "curvature", deviation: kappa_dev });
    }

    let tau = torsion(cj)?;
    let db = covariant_derivative(&t, &b)?;
    let tau_frame = -db.dot(&n).value();
    let tau_dev = (tau.value() - tau_frame).abs();
    if !(tau_dev <= TORSION_AGREEMENT_TOL) {
        return Err(Error::FrameInconsistency { what: "torsion", deviation: tau_dev });
    }

    let data = FrenetData { t, n, b, kappa, tau, tau_frame, curve: cj.clone() };
    let ortho = data.orthonormality_error();
    if !(ortho <= FRAME_ORTHONORMAL_TOL) {
        return Err(Error::FrameInconsistency { what: "orthonormality", deviation: ortho });
    }
    Ok(data)
}

/// Vertical (`E3`) components of the Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalComponents {
    pub t3: f64,
    pub n3: f64,
    pub b3: f64,
    /// Largest difference between the frame values and the coordinate
    /// formulas `T3 = z'`, `N3 = -(e^{2z}x'^2 - e^{-2z}y'^2 - z'')/κ`,
    /// `B3 = (-y'x'' + x'(y'' - 4y'z'))/κ`.
    pub formula_deviation: f64,
}

pub fn vertical_components(f: &FrenetData) -> VerticalComponents {
    let (t3, n3, b3) = (f.t.value()[2], f.n.value()[2], f.b.value()[2]);
    let formula_deviation = match vertical_formulas(&f.curve, f.kappa.value()) {
        Ok((ft3, fn3, fb3)) => (t3 - ft3).abs().max((n3 - fn3).abs()).max((b3 - fb3).abs()),
        Err(_) => f64::NAN,
    };
    VerticalComponents { t3, n3, b3, formula_deviation }
}

fn vertical_formulas(cj: &CurveJet, kappa: f64) -> Result<(f64, f64, f64)> {
    let z = cj.z.value();
    let x1 = cj.x.derivative(1)?;
    let x2 = cj.x.derivative(2)?;
    let y1 = cj.y.derivative(1)?;
    let y2 = cj.y.derivative(2)?;
    let z1 = cj.z.derivative(1)?;
    let z2 = cj.z.derivative(2)?;
    let n3 = -(libm::exp(2.0 * z) * x1 * x1 - libm::exp(-2.0 * z) * y1 * y1 - z2) / kappa;
    let b3 = (-y1 * x2 + x1 * (-4.0 * y1 * z1 + y2)) / kappa;
    Ok((z1, n3, b3))
}
