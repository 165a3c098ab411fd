//! Differential geometry of curves in Sol, the solvable Lie group
//! `(R^3, e^{2z} dx^2 + e^{-2z} dy^2 + dz^2)`.
//!
//! Everything here is pure computation over `f64` and heap-allocated jets, so
//! the crate builds without `std`. Derivatives of closed-form curves come from
//! truncated Taylor arithmetic ([`jet::Jet`]), never from finite differences.
//!
//! Module map:
//! - [`jet`]: truncated Taylor series and elementary functions on them.
//! - [`geometry`]: metric, orthonormal frame, connection, curvature, isometries, Killing fields.
//! - [`curve`]: closed-form curves, tangents, covariant derivatives, curvature, torsion, Frenet frames.
//! - [`tension`]: r-harmonic tension fields and the Frenet form of the triharmonic system.
//! - [`helix`]: the algebraic helix system, its root scan, the explicit helix family.
//! - [`integrate`]: RK4 integration of the Frenet natural equations.
//! - [`killing`]: lengths and angles of Killing fields along curves.
//! - [`verify`]: end-to-end check orchestration producing a [`report::Report`].
#![cfg_attr(not(test), no_std)]
// `!(x <= tol)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod curve;
pub mod error;
pub mod geometry;
pub mod helix;
pub mod integrate;
pub mod jet;
pub mod killing;
pub mod report;
pub mod tension;
pub mod verify;

pub use curve::{CurveJet, CurveSpec, FrameJet, FrenetData};
pub use error::{Error, Result};
pub use geometry::{Axis, FrameVector, Isometry, KillingField, Point3};
pub use jet::Jet;

/// Jet order used when none is given: the triharmonic residual consumes six
/// coordinate derivatives, two more leave room for κ and τ as jets.
pub const DEFAULT_JET_ORDER: usize = 8;

/// Integer power without `std`.
pub(crate) fn powi(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}
