//! The Sol space: metric, the orthonormal frame `E1 = e^{-z} ∂x`,
//! `E2 = e^{z} ∂y`, `E3 = ∂z`, its Levi-Civita connection and curvature,
//! the isometry generators and the Killing fields.
//!
//! Tangent vectors are carried as [`FrameVector`]s, i.e. components in the
//! orthonormal frame. Because the frame is orthonormal, inner products and
//! norms are Euclidean in these components.

use core::ops::{Add, Index, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Components of a tangent vector with respect to `E1, E2, E3`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameVector(pub [f64; 3]);

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector([0.0; 3]);
    pub const E1: FrameVector = FrameVector([1.0, 0.0, 0.0]);
    pub const E2: FrameVector = FrameVector([0.0, 1.0, 0.0]);
    pub const E3: FrameVector = FrameVector([0.0, 0.0, 1.0]);

    pub const fn new(v1: f64, v2: f64, v3: f64) -> Self {
        FrameVector([v1, v2, v3])
    }

    pub fn basis(axis: Axis) -> Self {
        let mut v = [0.0; 3];
        v[axis.index()] = 1.0;
        FrameVector(v)
    }

    pub fn dot(&self, other: &FrameVector) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    /// Cross product with orientation `(E1, E2, E3)`.
    pub fn cross(&self, o: &FrameVector) -> FrameVector {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        FrameVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn max_abs_diff(&self, o: &FrameVector) -> f64 {
        (0..3).map(|i| (self.0[i] - o.0[i]).abs()).fold(0.0, f64::max)
    }
}

impl Index<usize> for FrameVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FrameVector {
    type Output = FrameVector;
    fn add(self, o: FrameVector) -> FrameVector {
        FrameVector([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for FrameVector {
    type Output = FrameVector;
    fn sub(self, o: FrameVector) -> FrameVector {
        FrameVector([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for FrameVector {
    type Output = FrameVector;
    fn neg(self) -> FrameVector {
        FrameVector([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for FrameVector {
    type Output = FrameVector;
    fn mul(self, f: f64) -> FrameVector {
        FrameVector([self.0[0] * f, self.0[1] * f, self.0[2] * f])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    E1,
    E2,
    E3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::E1, Axis::E2, Axis::E3];

    pub fn index(self) -> usize {
        match self {
            Axis::E1 => 0,
            Axis::E2 => 1,
            Axis::E3 => 2,
        }
    }
}

/// Diagonal metric coefficients `(g_xx, g_yy, g_zz) = (e^{2z}, e^{-2z}, 1)`.
pub fn metric_components(p: &Point3) -> (f64, f64, f64) {
    (libm::exp(2.0 * p.z), libm::exp(-2.0 * p.z), 1.0)
}

/// `g_p(u, w)` for coordinate vectors `u`, `w`.
pub fn metric_inner(p: &Point3, u: [f64; 3], w: [f64; 3]) -> f64 {
    let (gx, gy, gz) = metric_components(p);
    gx * u[0] * w[0] + gy * u[1] * w[1] + gz * u[2] * w[2]
}

/// Coordinate components `(dx, dy, dz)` to frame components.
pub fn coord_to_frame(p: &Point3, v: [f64; 3]) -> FrameVector {
    FrameVector([libm::exp(p.z) * v[0], libm::exp(-p.z) * v[1], v[2]])
}

pub fn frame_to_coord(p: &Point3, v: &FrameVector) -> [f64; 3] {
    [libm::exp(-p.z) * v[0], libm::exp(p.z) * v[1], v[2]]
}

/// `∇_{E_i} E_j`.
pub fn frame_connection(i: Axis, j: Axis) -> FrameVector {
    use Axis::*;
    match (i, j) {
        (E1, E1) => FrameVector::new(0.0, 0.0, -1.0),
        (E1, E3) => FrameVector::new(1.0, 0.0, 0.0),
        (E2, E2) => FrameVector::new(0.0, 0.0, 1.0),
        (E2, E3) => FrameVector::new(0.0, -1.0, 0.0),
        _ => FrameVector::ZERO,
    }
}

/// `[E_i, E_j]`.
pub fn frame_bracket(i: Axis, j: Axis) -> FrameVector {
    use Axis::*;
    match (i, j) {
        (E2, E3) => FrameVector::new(0.0, -1.0, 0.0),
        (E3, E2) => FrameVector::new(0.0, 1.0, 0.0),
        (E1, E3) => FrameVector::new(1.0, 0.0, 0.0),
        (E3, E1) => FrameVector::new(-1.0, 0.0, 0.0),
        _ => FrameVector::ZERO,
    }
}

/// `∇_X Y` for fields with constant frame components.
pub fn connection(x: &FrameVector, y: &FrameVector) -> FrameVector {
    let mut out = FrameVector::ZERO;
    for i in Axis::ALL {
        for j in Axis::ALL {
            let c = x[i.index()] * y[j.index()];
            if c != 0.0 {
                out = out + frame_connection(i, j) * c;
            }
        }
    }
    out
}

/// `R(E_i, E_j) E_k` with `R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]`.
fn curvature_table(i: Axis, j: Axis, k: Axis) -> FrameVector {
    use Axis::*;
    let base = |i: Axis, j: Axis, k: Axis| -> FrameVector {
        match (i, j, k) {
            (E1, E2, E1) => FrameVector::new(0.0, -1.0, 0.0),
            (E1, E3, E1) => FrameVector::new(0.0, 0.0, 1.0),
            (E1, E2, E2) => FrameVector::new(1.0, 0.0, 0.0),
            (E2, E3, E2) => FrameVector::new(0.0, 0.0, 1.0),
            (E1, E3, E3) => FrameVector::new(-1.0, 0.0, 0.0),
            (E2, E3, E3) => FrameVector::new(0.0, -1.0, 0.0),
            _ => FrameVector::ZERO,
        }
    };
    if i.index() <= j.index() {
        base(i, j, k)
    } else {
        -base(j, i, k)
    }
}

/// `R(X, Y) Z` by trilinear extension of the frame table.
pub fn curvature_operator(x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
    let mut out = FrameVector::ZERO;
    for i in Axis::ALL {
        for j in Axis::ALL {
            let cij = x[i.index()] * y[j.index()];
            if cij == 0.0 {
                continue;
            }
            for k in Axis::ALL {
                let c = cij * z[k.index()];
                if c != 0.0 {
                    out = out + curvature_table(i, j, k) * c;
                }
            }
        }
    }
    out
}

/// `R(X, Y, Z, W) = <R(X, Y) W, Z>`.
pub fn curvature_4tensor(x: &FrameVector, y: &FrameVector, z: &FrameVector, w: &FrameVector) -> f64 {
    curvature_operator(x, y, w).dot(z)
}

/// Generators of the isometry group used throughout: the three one-parameter
/// families of the identity component and the two reflections.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "c", rename_all = "snake_case"))]
pub enum Isometry {
    TranslateX(f64),
    TranslateY(f64),
    /// `(x, y, z) -> (e^{-c} x, e^{c} y, z + c)`.
    FlowZ(f64),
    ReflectX,
    ReflectY,
}

impl Isometry {
    pub fn apply(&self, p: &Point3) -> Point3 {
        match *self {
            Isometry::TranslateX(c) => Point3::new(p.x + c, p.y, p.z),
            Isometry::TranslateY(c) => Point3::new(p.x, p.y + c, p.z),
            Isometry::FlowZ(c) => Point3::new(libm::exp(-c) * p.x, libm::exp(c) * p.y, p.z + c),
            Isometry::ReflectX => Point3::new(-p.x, p.y, p.z),
            Isometry::ReflectY => Point3::new(p.x, -p.y, p.z),
        }
    }

    /// Push-forward of a coordinate vector (the maps are affine in x, y).
    pub fn push_forward(&self, v: [f64; 3]) -> [f64; 3] {
        match *self {
            Isometry::TranslateX(_) | Isometry::TranslateY(_) => v,
            Isometry::FlowZ(c) => [libm::exp(-c) * v[0], libm::exp(c) * v[1], v[2]],
            Isometry::ReflectX => [-v[0], v[1], v[2]],
            Isometry::ReflectY => [v[0], -v[1], v[2]],
        }
    }

    pub fn preserves_orientation(&self) -> bool {
        !matches!(self, Isometry::ReflectX | Isometry::ReflectY)
    }
}

/// Applies the isometries left to right.
pub fn apply_all(isos: &[Isometry], p: &Point3) -> Point3 {
    isos.iter().fold(*p, |q, iso| iso.apply(&q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum KillingField {
    V1,
    V2,
    V3,
}

impl KillingField {
    pub const ALL: [KillingField; 3] = [KillingField::V1, KillingField::V2, KillingField::V3];

    /// Coordinate components: `V1 = ∂x`, `V2 = ∂y`, `V3 = -x ∂x + y ∂y + ∂z`.
    pub fn coordinate_components(&self, p: &Point3) -> [f64; 3] {
        match self {
            KillingField::V1 => [1.0, 0.0, 0.0],
            KillingField::V2 => [0.0, 1.0, 0.0],
            KillingField::V3 => [-p.x, p.y, 1.0],
        }
    }

    /// Frame components: `V1 = e^z E1`, `V2 = e^{-z} E2`,
    /// `V3 = -x e^z E1 + y e^{-z} E2 + E3`.
    pub fn at(&self, p: &Point3) -> FrameVector {
        coord_to_frame(p, self.coordinate_components(p))
    }

    pub fn name(&self) -> &'static str {
        match self {
            KillingField::V1 => "V1",
            KillingField::V2 => "V2",
            KillingField::V3 => "V3",
        }
    }
}

pub fn killing_field(id: KillingField, p: &Point3) -> FrameVector {
    id.at(p)
}
