use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Binary jet operation on jets of different order.
    OrderMismatch { left: usize, right: usize },
    /// Division by a jet whose constant term is zero.
    DivisionByZeroJet,
    /// `log`/`sqrt` of a jet with non-positive constant term.
    Domain { function: &'static str, value: f64 },
    /// Requested derivative beyond the jet order.
    OrderExceeded { requested: usize, order: usize },
    /// Not enough jet order left to differentiate further.
    OrderExhausted { needed: usize, available: usize },
    NotUnitSpeed { deviation: f64 },
    TorsionUndefined,
    GeodesicDegeneracy { kappa: f64 },
    FrameInconsistency { what: &'static str, deviation: f64 },
    FrameDrift { s: f64, drift: f64 },
    InvalidCurve(&'static str),
    InvalidParams(&'static str),
    ZeroField,
    NoRootsFound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderMismatch { left, right } => {
                write!(f, "jet order mismatch: {left} vs {right}")
            }
            Error::DivisionByZeroJet => write!(f, "division by a jet with zero constant term"),
            Error::Domain { function, value } => {
                write!(f, "{function} undefined at constant term {value}")
            }
            Error::OrderExceeded { requested, order } => {
                write!(f, "derivative {requested} requested from a jet of order {order}")
            }
            Error::OrderExhausted { needed, available } => {
                write!(f, "jet order exhausted: need {needed}, have {available}")
            }
            Error::NotUnitSpeed { deviation } => {
                write!(f, "curve is not unit speed (|<T,T> - 1| = {deviation:e})")
            }
            Error::TorsionUndefined => write!(f, "torsion undefined: denominator vanishes"),
            Error::GeodesicDegeneracy { kappa } => {
                write!(f, "Frenet frame undefined: curvature {kappa:e} at or below threshold")
            }
            Error::FrameInconsistency { what, deviation } => {
                write!(f, "frame inconsistency in {what}: deviation {deviation:e}")
            }
            Error::FrameDrift { s, drift } => {
                write!(f, "frame orthonormality drift {drift:e} at s = {s}")
            }
            Error::InvalidCurve(msg) => write!(f, "invalid curve: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::ZeroField => write!(f, "Killing field vanishes at this point"),
            Error::NoRootsFound => write!(f, "helix root scan found no roots"),
        }
    }
}

impl core::error::Error for Error {}
