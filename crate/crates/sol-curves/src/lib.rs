//! File formats, CSV/JSON emission and the command-line front end for
//! `sol-curves-core`.

pub mod cli;
pub mod error;
pub mod input;
pub mod output;

pub use cli::{run, Cli, Command};
pub use error::CliError;
pub use input::{load_curve, parse_builtin, parse_curve_json, CurveFile, SRange};
