//! Helices (constant κ and τ) and the algebraic triharmonic system they satisfy.
//!
//! With `κ = a`, `τ = b` constant, the tangential equation holds identically
//! and the remaining two reduce to polynomial conditions in `a`, `b` and the
//! vertical components `B3`, `T3` ([`helix_algebraic_residuals`]). Helices with
//! `N3 = 0` come in the explicit families built by [`helix_family_curve`],
//! parametrized by `c1 = T3`; [`classify`] scans that family for roots.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::curve::{frenet_frame, vertical_components, Coordinate, CurveSpec};
use crate::powi;
use crate::error::{Error, Result};
use crate::geometry::Isometry;
use crate::DEFAULT_JET_ORDER;

pub const NEWTON_STEP: f64 = 1e-7;
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
pub const ROOT_DEDUP_TOL: f64 = 1e-6;

/// Constant curvature and torsion of a helix.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HelixSpec {
    pub a: f64,
    pub b: f64,
}

/// Normal and binormal equations for constant `κ = a`, `τ = b`.
///
/// The first value is `a [a⁴ − 2abB3T3 + 2a²(1+b²−2B3²) + b²(1+b²−2B3²)]`; the
/// second is the factor `2a²B3 + b²B3 + abT3` that must vanish wherever `N3 ≠ 0`.
pub fn helix_algebraic_residuals(a: f64, b: f64, b3: f64, t3: f64) -> (f64, f64) {
    let w = 1.0 + b * b - 2.0 * b3 * b3;
    let n = a * (powi(a, 4) - 2.0 * a * b * b3 * t3 + 2.0 * a * a * w + b * b * w);
    let bb = 2.0 * a * a * b3 + b * b * b3 + a * b * t3;
    (n, bb)
}

/// `4a²b²B3²(B3² − 1) + (a⁴ + 2a²(1+b²−2B3²) + b²(1+b²−2B3²))²`: the product of the
/// normal equation over both signs of `T3 = ±√(1 − B3²)`.
pub fn reduced_quartic_constraint(a: f64, b: f64, b3: f64) -> f64 {
    let w = 1.0 + b * b - 2.0 * b3 * b3;
    let p = powi(a, 4) + 2.0 * a * a * w + b * b * w;
    4.0 * a * a * b * b * b3 * b3 * (b3 * b3 - 1.0) + p * p
}

/// Which solution of `N3 = 0` the height function follows:
/// `z = ½ log(y'/x')` or `z = ½ log(−y'/x')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ZBranch {
    Z1,
    Z2,
}

impl ZBranch {
    pub const ALL: [ZBranch; 2] = [ZBranch::Z1, ZBranch::Z2];

    fn torsion_sign(self) -> f64 {
        match self {
            ZBranch::Z1 => 1.0,
            ZBranch::Z2 => -1.0,
        }
    }
}

/// Sign choice when integrating `c1² + 2c2 e^{2c1 s} x'² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XBranch {
    X1,
    XTilde,
}

/// `(a, b)` forced on the `c1` family: `a² = c1² − c1⁴`, `b = ±(1 − c1²)`.
pub fn helix_relations(c1: f64, z: ZBranch) -> (f64, f64) {
    let u = c1 * c1;
    (c1.abs() * libm::sqrt(1.0 - u), z.torsion_sign() * (1.0 - u))
}

/// The unit-speed helix with `N3 = 0` and `T3 = c1`:
/// `x = ∓√(1−c1²)/(c1√(2c2)) e^{−c1 s} + cx`, `y = ±√((1−c1²)c2)/(c1√2) e^{c1 s} + cy`,
/// `z = ½ log(c2 e^{2c1 s})`, with `x` mirrored on the `Z2` branch.
pub fn helix_family_curve(c1: f64, c2: f64, cx: f64, cy: f64, z: ZBranch, x: XBranch) -> Result<CurveSpec> {
    if !(c1.abs() > 0.0 && c1.abs() < 1.0) {
        return Err(Error::InvalidParams("c1 must satisfy 0 < |c1| < 1"));
    }
    if !(c2 > 0.0 && c2.is_finite()) {
        return Err(Error::InvalidParams("c2 must be positive"));
    }
    if !(cx.is_finite() && cy.is_finite()) {
        return Err(Error::InvalidParams("cx, cy must be finite"));
    }
    let w = libm::sqrt(1.0 - c1 * c1);
    let mut ax = -w / (c1 * libm::sqrt(2.0 * c2));
    let mut ay = w * libm::sqrt(c2) / (c1 * core::f64::consts::SQRT_2);
    if x == XBranch::XTilde {
        ax = -ax;
        ay = -ay;
    }
    if z == ZBranch::Z2 {
        ax = -ax;
    }
    CurveSpec::new(
        Coordinate::affine(cx, 0.0).with_exp(ax, -c1),
        Coordinate::affine(cy, 0.0).with_exp(ay, c1),
        Coordinate::affine(0.5 * libm::log(c2), c1),
    )
}

/// Integration constants selecting one of the four explicit curves with
/// `c1 = ±1/√2` on the `Z1` branch.
///
/// Branches: 1 = (`X1`, `c1 > 0`), 2 = (`X1`, `c1 < 0`), 3 = (`XTilde`, `c1 > 0`),
/// 4 = (`XTilde`, `c1 < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TriharmonicHelixParams {
    pub c1: f64,
    pub c2: f64,
    pub cx: f64,
    pub cy: f64,
    pub branch: u8,
}

impl TriharmonicHelixParams {
    pub fn new(branch: u8, c2: f64, cx: f64, cy: f64) -> Result<Self> {
        let c1 = match branch {
            1 | 3 => FRAC_1_SQRT_2,
            2 | 4 => -FRAC_1_SQRT_2,
            _ => return Err(Error::InvalidParams("branch must be 1, 2, 3 or 4")),
        };
        let p = TriharmonicHelixParams { c1, c2, cx, cy, branch };
        p.validate()?;
        Ok(p)
    }

    /// Branch 1 with `c2 = 1`, `cx = cy = 0`: `(1/√2)(−e^{−s/√2}, e^{s/√2}, s)`.
    pub fn reference() -> Self {
        TriharmonicHelixParams { c1: FRAC_1_SQRT_2, c2: 1.0, cx: 0.0, cy: 0.0, branch: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let expected_sign = match self.branch {
            1 | 3 => 1.0,
            2 | 4 => -1.0,
            _ => return Err(Error::InvalidParams("branch must be 1, 2, 3 or 4")),
        };
        if !((self.c1 - expected_sign * FRAC_1_SQRT_2).abs() <= 1e-12) {
            return Err(Error::InvalidParams("c1 must be +1/√2 (branches 1, 3) or -1/√2 (branches 2, 4)"));
        }
        if !(self.c2 > 0.0 && self.c2.is_finite()) {
            return Err(Error::InvalidParams("c2 must be positive"));
        }
        if !(self.cx.is_finite() && self.cy.is_finite()) {
            return Err(Error::InvalidParams("cx, cy must be finite"));
        }
        Ok(())
    }

    fn x_branch(&self) -> XBranch {
        if self.branch <= 2 {
            XBranch::X1
        } else {
            XBranch::XTilde
        }
    }
}

pub fn build_triharmonic_helix(p: &TriharmonicHelixParams) -> Result<CurveSpec> {
    p.validate()?;
    helix_family_curve(p.c1, p.c2, p.cx, p.cy, ZBranch::Z1, p.x_branch())
}

/// Isometries, followed by a reversal of the parameter when the flag is set,
/// that carry the selected branch onto the reference curve.
///
/// Branches with `c1 < 0` run downwards in `z`; the listed generators never
/// change the sign of `z'`, so those need `s -> -s` as well.
pub fn normalizing_isometries(p: &TriharmonicHelixParams) -> (Vec<Isometry>, bool) {
    let mut isos = alloc::vec![
        Isometry::TranslateX(-p.cx),
        Isometry::TranslateY(-p.cy),
        Isometry::FlowZ(-0.5 * libm::log(p.c2)),
    ];
    if p.branch == 2 || p.branch == 3 {
        isos.push(Isometry::ReflectX);
        isos.push(Isometry::ReflectY);
    }
    (isos, p.branch == 2 || p.branch == 4)
}

pub fn normalize_helix(p: &TriharmonicHelixParams) -> Result<CurveSpec> {
    let (isos, reverse) = normalizing_isometries(p);
    let c = build_triharmonic_helix(p)?.transform_all(&isos);
    Ok(if reverse { c.reversed() } else { c })
}

/// One solution of the helix system on the `c1` family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HelixRoot {
    pub c1: f64,
    pub a: f64,
    pub b: f64,
    /// The `B3` value at which the normal equation vanishes.
    pub b3: f64,
    pub t3: f64,
    pub z_branch: ZBranch,
    /// Normal equation at the root.
    pub residual: f64,
    /// Binormal equation `2a N3 (2a²B3 + b²B3 + abT3)`; zero because `N3 = 0` on the family.
    pub residual_b: f64,
    /// `B3` of the right-handed Frenet frame of the corresponding curve.
    pub frame_b3: f64,
    /// Normal equation at the frame's κ, τ, `B3` and `T3`.
    pub frame_residual: f64,
    /// Whether the curve's own frame satisfies the normal equation.
    pub realized: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassificationResult {
    pub roots: Vec<HelixRoot>,
    /// Largest normal-equation residual over the returned roots.
    pub residual_at_root: f64,
    pub samples: usize,
}

fn branch_residual(c1: f64, z: ZBranch, b3_sign: f64) -> f64 {
    let (a, b) = helix_relations(c1, z);
    let b3 = b3_sign * libm::sqrt(1.0 - c1 * c1);
    helix_algebraic_residuals(a, b, b3, c1).0
}

/// Newton iteration with a central-difference slope, kept inside `[lo, hi]`
/// by falling back to bisection.
fn polish(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_MAX_ITER {
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let slope = (f(x + NEWTON_STEP) - f(x - NEWTON_STEP)) / (2.0 * NEWTON_STEP);
        let mut next = x - fx / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= NEWTON_TOL {
            break;
        }
    }
    x
}

fn annotate(c1: f64, z: ZBranch, b3: f64, residual: f64) -> Result<HelixRoot> {
    let (a, b) = helix_relations(c1, z);
    let curve = helix_family_curve(c1, 1.0, 0.0, 0.0, z, XBranch::X1)?;
    let f = frenet_frame(&curve.jet(0.0, DEFAULT_JET_ORDER)?)?;
    let v = vertical_components(&f);
    let frame_residual = helix_algebraic_residuals(f.kappa.value(), f.tau.value(), v.b3, v.t3).0;
    Ok(HelixRoot {
        c1,
        a,
        b,
        b3,
        t3: c1,
        z_branch: z,
        residual,
        residual_b: 0.0,
        frame_b3: v.b3,
        frame_residual,
        realized: frame_residual.abs() <= ROOT_RESIDUAL_TOL && (v.b3 - b3).abs() <= 1e-8,
    })
}

/// Scans `c1` over `(−1, 1) \ {0}` on both height branches and both signs of
/// `B3 = ±√(1 − c1²)`, polishes each sign change and returns the roots sorted
/// by `c1`.
pub fn classify(samples: usize) -> Result<ClassificationResult> {
    if samples < 1000 {
        return Err(Error::InvalidParams("at least 1000 samples are required"));
    }
    let grid: Vec<f64> = (0..samples).map(|k| -1.0 + 2.0 * (k as f64 + 0.5) / samples as f64).collect();
    let mut roots: Vec<HelixRoot> = Vec::new();
    for z in ZBranch::ALL {
        for b3_sign in [1.0, -1.0] {
            let f = |c1: f64| branch_residual(c1, z, b3_sign);
            let values: Vec<f64> = grid.iter().map(|&c| f(c)).collect();
            for k in 0..samples - 1 {
                let (c_lo, c_hi) = (grid[k], grid[k + 1]);
                if (c_lo < 0.0) != (c_hi < 0.0) {
                    continue;
                }
                let root = if values[k] == 0.0 {
                    c_lo
                } else if values[k] * values[k + 1] < 0.0 {
                    polish(&f, c_lo, c_hi)
                } else {
                    continue;
                };
                let residual = f(root);
                if !(residual.abs() <= ROOT_RESIDUAL_TOL) {
                    continue;
                }
                let b3 = b3_sign * libm::sqrt(1.0 - root * root);
                let duplicate = roots.iter().any(|r| {
                    r.z_branch == z && (r.c1 - root).abs() <= ROOT_DEDUP_TOL && (r.b3 - b3).abs() <= ROOT_DEDUP_TOL
                });
                if !duplicate {
                    roots.push(annotate(root, z, b3, residual)?);
                }
            }
        }
    }
    if roots.is_empty() {
        return Err(Error::NoRootsFound);
    }
    roots.sort_by(|p, q| p.c1.total_cmp(&q.c1).then(p.z_branch.cmp(&q.z_branch)));
    let residual_at_root = roots.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    Ok(ClassificationResult { roots, residual_at_root, samples })
}

/// Cells of the `(a, b, B3)` grid in which [`reduced_quartic_constraint`] changes
/// sign along the helix relations `a² = |b|(1 − |b|)`, `B3² = |b|`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridScanResult {
    pub step: f64,
    /// Lower corners `(a, b, B3)` of flagged cells.
    pub flagged: Vec<[f64; 3]>,
    /// Flagged cells farther than two steps from `(1/2, ±1/2, ±1/√2)`.
    pub unexpected: Vec<[f64; 3]>,
    pub cells_visited: usize,
}

pub const GRID_STEP: f64 = 0.01;
const GRID_CURVE_SAMPLES: usize = 400_000;

/// Grid over `a ∈ (0, 3]`, `b ∈ [−3, 3]`, `B3 ∈ [−1, 1]` with step 0.01.
/// The relation curve is sampled finely; each pair of consecutive samples is
/// assigned to the cell containing its midpoint, and the cell is flagged when
/// the constraint changes sign across the pair.
pub fn grid_scan() -> GridScanResult {
    let h = GRID_STEP;
    let n = GRID_CURVE_SAMPLES;
    let cell = |a: f64, b: f64, b3: f64| -> Option<(i64, i64, i64)> {
        let i = libm::floor(a / h) as i64;
        let j = libm::floor((b + 3.0) / h) as i64;
        let k = libm::floor((b3 + 1.0) / h) as i64;
        let inside = (0..300).contains(&i) && (0..600).contains(&j) && (0..200).contains(&k);
        inside.then_some((i, j, k))
    };
    let mut flagged_idx: Vec<(i64, i64, i64)> = Vec::new();
    let mut visited: Vec<(i64, i64, i64)> = Vec::new();
    for b_sign in [1.0, -1.0] {
        for b3_sign in [1.0, -1.0] {
            let point = |u: f64| {
                let a = libm::sqrt(u * (1.0 - u));
                let (b, b3) = (b_sign * u, b3_sign * libm::sqrt(u));
                (a, b, b3, reduced_quartic_constraint(a, b, b3))
            };
            let mut prev = point(0.5 / n as f64);
            for m in 1..n {
                let cur = point((m as f64 + 0.5) / n as f64);
                let mid = (0.5 * (prev.0 + cur.0), 0.5 * (prev.1 + cur.1), 0.5 * (prev.2 + cur.2));
                if let Some(c) = cell(mid.0, mid.1, mid.2) {
                    if visited.last() != Some(&c) {
                        visited.push(c);
                    }
                    if (prev.3 < 0.0) != (cur.3 < 0.0) || cur.3 == 0.0 {
                        flagged_idx.push(c);
                    }
                }
                prev = cur;
            }
        }
    }
    flagged_idx.sort_unstable();
    flagged_idx.dedup();
    visited.sort_unstable();
    visited.dedup();
    let corner = |(i, j, k): (i64, i64, i64)| [i as f64 * h, j as f64 * h - 3.0, k as f64 * h - 1.0];
    let flagged: Vec<[f64; 3]> = flagged_idx.into_iter().map(corner).collect();
    let near_expected = |c: &[f64; 3]| {
        let centre = [c[0] + 0.5 * h, c[1] + 0.5 * h, c[2] + 0.5 * h];
        (centre[0] - 0.5).abs() <= 2.0 * h
            && (centre[1].abs() - 0.5).abs() <= 2.0 * h
            && (centre[2].abs() - FRAC_1_SQRT_2).abs() <= 2.0 * h
    };
    let unexpected = flagged.iter().filter(|c| !near_expected(c)).copied().collect();
    GridScanResult { step: h, flagged, unexpected, cells_visited: visited.len() }
}
