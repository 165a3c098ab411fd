//! Curve arguments: JSON files in the coefficient format and `builtin:` names.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sol_curves_core::curve::Coordinate;
use sol_curves_core::helix::{build_triharmonic_helix, TriharmonicHelixParams};
use sol_curves_core::killing::{constant_z_curve, linspace};
use sol_curves_core::{CurveSpec, DEFAULT_JET_ORDER};

use crate::error::CliError;

pub const JET_ORDER_ENV: &str = "SOL_CURVES_JET_ORDER";
const BUILTIN_PREFIX: &str = "builtin:";

/// One coordinate as `const + linear·s + Σ amp·e^{rate·s}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateFile {
    #[serde(rename = "const", default)]
    pub constant: f64,
    #[serde(default)]
    pub linear: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exp: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub x: CoordinateFile,
    pub y: CoordinateFile,
    pub z: CoordinateFile,
}

impl CoordinateFile {
    fn to_coordinate(&self) -> Coordinate {
        self.exp
            .iter()
            .fold(Coordinate::affine(self.constant, self.linear), |c, [amp, rate]| c.with_exp(*amp, *rate))
    }

    fn from_coordinate(c: &Coordinate) -> Self {
        CoordinateFile {
            constant: c.constant,
            linear: c.linear,
            exp: c.exp_terms.iter().map(|t| [t.amplitude, t.rate]).collect(),
        }
    }
}

impl CurveFile {
    pub fn to_spec(&self) -> Result<CurveSpec, CliError> {
        CurveSpec::new(self.x.to_coordinate(), self.y.to_coordinate(), self.z.to_coordinate())
            .map_err(|e| CliError::Usage(format!("curve: {e}")))
    }

    pub fn from_spec(spec: &CurveSpec) -> Self {
        CurveFile {
            x: CoordinateFile::from_coordinate(&spec.x),
            y: CoordinateFile::from_coordinate(&spec.y),
            z: CoordinateFile::from_coordinate(&spec.z),
        }
    }
}

pub fn parse_curve_json(text: &str) -> Result<CurveSpec, CliError> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("curve JSON: {e}")))?;
    file.to_spec()
}

pub fn curve_to_json(spec: &CurveSpec) -> String {
    serde_json::to_string(&CurveFile::from_spec(spec)).expect("plain numeric struct serializes")
}

fn parse_params(query: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for pair in query.split('&').filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("builtin parameter '{pair}' is not key=value")))?;
        let value: f64 = v.parse().map_err(|_| CliError::Usage(format!("builtin parameter {k}: '{v}' is not a number")))?;
        if out.insert(k.to_string(), value).is_some() {
            return Err(CliError::Usage(format!("builtin parameter {k} given twice")));
        }
    }
    Ok(out)
}

/// Removes the allowed keys from `params`, filling defaults, and rejects leftovers.
fn take(params: &mut BTreeMap<String, f64>, key: &str, default: Option<f64>) -> Result<f64, CliError> {
    match (params.remove(key), default) {
        (Some(v), _) | (None, Some(v)) => Ok(v),
        (None, None) => Err(CliError::Usage(format!("builtin parameter {key} is required"))),
    }
}

fn reject_leftovers(name: &str, params: &BTreeMap<String, f64>) -> Result<(), CliError> {
    match params.keys().next() {
        Some(k) => Err(CliError::Usage(format!("builtin {name} has no parameter {k}"))),
        None => Ok(()),
    }
}

/// `builtin:triharmonic-helix?c2=…&cx=…&cy=…&branch=…`,
/// `builtin:constant-z?beta=…&c=…&cx=…&cy=…` or `builtin:vertical-line`.
pub fn parse_builtin(arg: &str) -> Result<CurveSpec, CliError> {
    let body = arg.strip_prefix(BUILTIN_PREFIX).unwrap_or(arg);
    let (name, query) = body.split_once('?').unwrap_or((body, ""));
    let mut params = parse_params(query)?;
    let core = |e: sol_curves_core::Error| CliError::Usage(format!("builtin {name}: {e}"));
    let spec = match name {
        "triharmonic-helix" => {
            let reference = TriharmonicHelixParams::reference();
            let c2 = take(&mut params, "c2", Some(reference.c2))?;
            let cx = take(&mut params, "cx", Some(reference.cx))?;
            let cy = take(&mut params, "cy", Some(reference.cy))?;
            let branch = take(&mut params, "branch", Some(reference.branch.into()))?;
            if !(branch.fract() == 0.0 && (1.0..=4.0).contains(&branch)) {
                return Err(CliError::Usage("builtin triharmonic-helix: branch must be 1, 2, 3 or 4".into()));
            }
            reject_leftovers(name, &params)?;
            let p = TriharmonicHelixParams::new(branch as u8, c2, cx, cy).map_err(core)?;
            build_triharmonic_helix(&p).map_err(core)?
        }
        "constant-z" => {
            let beta = take(&mut params, "beta", None)?;
            let c = take(&mut params, "c", Some(0.0))?;
            let cx = take(&mut params, "cx", Some(0.0))?;
            let cy = take(&mut params, "cy", Some(0.0))?;
            reject_leftovers(name, &params)?;
            constant_z_curve(beta, c, cx, cy).map_err(core)?
        }
        "vertical-line" => {
            reject_leftovers(name, &params)?;
            CurveSpec::vertical_line()
        }
        _ => return Err(CliError::Usage(format!("unknown builtin curve '{name}'"))),
    };
    Ok(spec)
}

/// A `builtin:` name or the path of a JSON curve file.
pub fn load_curve(arg: &str) -> Result<CurveSpec, CliError> {
    if arg.starts_with(BUILTIN_PREFIX) {
        return parse_builtin(arg);
    }
    let text = std::fs::read_to_string(Path::new(arg))
        .map_err(|e| CliError::Usage(format!("cannot read curve file {arg}: {e}")))?;
    parse_curve_json(&text)
}

/// Jet order from `SOL_CURVES_JET_ORDER`, or the default when unset.
pub fn jet_order_from(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_JET_ORDER),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("{JET_ORDER_ENV}='{v}' is not a positive integer"))),
        },
    }
}

pub fn jet_order() -> Result<usize, CliError> {
    jet_order_from(std::env::var(JET_ORDER_ENV).ok().as_deref())
}

/// `LO:HI:N`, N samples with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl SRange {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

impl FromStr for SRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(format!("'{s}' is not LO:HI:N"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("LO '{lo}' is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("HI '{hi}' is not a number"))?;
        let n: usize = n.parse().map_err(|_| format!("N '{n}' is not a count"))?;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err("LO and HI must be finite".into());
        }
        if n == 0 {
            return Err("N must be at least 1".into());
        }
        Ok(SRange { lo, hi, n })
    }
}
