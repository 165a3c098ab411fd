//! Argument parsing and the six subcommands.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sol_curves_core::curve::frenet_frame;
use sol_curves_core::helix::{build_triharmonic_helix, classify, TriharmonicHelixParams};
use sol_curves_core::integrate::{integrate_frenet_natural, FrenetState, Trajectory};
use sol_curves_core::killing::{killing_angle_with_tangent, killing_length_along};
use sol_curves_core::tension::{r_tension_jet, triharmonic_residual};
use sol_curves_core::verify::{failing_names, verify_theorem, VerifyOptions};
use sol_curves_core::{Error, FrameVector, KillingField, Point3};

use crate::error::CliError;
use crate::input::{jet_order, load_curve, SRange};
use crate::output::CsvTable;

#[derive(Debug, Parser)]
#[command(name = "sol-curves", version, about = "Curves, tension fields and helices in Sol space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// JSON curve file, or builtin:triharmonic-helix, builtin:constant-z?beta=B, builtin:vertical-line
    #[arg(long)]
    pub curve: String,
    /// Samples as LO:HI:N, endpoints included
    #[arg(long, allow_hyphen_values = true)]
    pub s_range: SRange,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    #[value(name = "V1")]
    V1,
    #[value(name = "V2")]
    V2,
    #[value(name = "V3")]
    V3,
}

impl From<FieldArg> for KillingField {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::V1 => KillingField::V1,
            FieldArg::V2 => KillingField::V2,
            FieldArg::V3 => KillingField::V3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full verification report as JSON; exits 1 if any check fails
    Verify {
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        tau: f64,
        /// Harmonicity order of the tension check
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Samples along the helix over s ∈ [-5, 5]
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, default_value_t = 10_000)]
        classify_samples: usize,
        #[arg(long, default_value_t = sol_curves_core::integrate::DEFAULT_STEP)]
        step: f64,
        /// Skip the Killing-field checks
        #[arg(long)]
        no_killing: bool,
    },
    /// CSV of position, Frenet frame, κ and τ
    Frenet {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// CSV of the r-harmonic tension, with Frenet components for r = 3
    Residual {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Helix classification as JSON
    Classify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// CSV trajectory of the curve with constant κ and τ; drift summary on stderr
    Integrate {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, default_value_t = sol_curves_core::integrate::DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = 5.0)]
        s_max: f64,
        /// Start from the closed-form helix frame at s = 0 instead of the origin with (E1, E2, E3)
        #[arg(long)]
        init_from_reference: bool,
    },
    /// CSV of the length of a Killing field and its angle with the tangent
    Killing {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, ignore_case = true)]
        field: FieldArg,
    },
}

fn at(s: f64) -> impl Fn(Error) -> CliError {
    move |e| CliError::Usage(format!("at s = {s}: {e}"))
}

fn frenet_table(out: &mut dyn Write, args: &CurveArgs, order: usize) -> Result<(), CliError> {
    let spec = load_curve(&args.curve)?;
    let mut rows = Vec::with_capacity(args.s_range.n);
    for s in args.s_range.values() {
        let f = frenet_frame(&spec.jet(s, order).map_err(at(s))?).map_err(at(s))?;
        let p = f.point();
        let (t, n, b) = (f.t.value(), f.n.value(), f.b.value());
        let mut row = vec![s, p.x, p.y, p.z];
        row.extend(t.0.iter().chain(&n.0).chain(&b.0));
        row.extend([f.kappa.value(), f.tau.value()]);
        rows.push(row);
    }
    let header = ["s", "x", "y", "z", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3", "kappa", "tau"];
    let mut table = CsvTable::new(out, &header)?;
    for row in &rows {
        table.row(row)?;
    }
    table.finish()
}

fn residual_table(out: &mut dyn Write, args: &CurveArgs, r: usize, order: usize) -> Result<(), CliError> {
    if r < 2 {
        return Err(CliError::Usage(format!("--r {r}: the harmonicity order must be at least 2")));
    }
    let spec = load_curve(&args.curve)?;
    let mut rows = Vec::with_capacity(args.s_range.n);
    for s in args.s_range.values() {
        let cj = spec.jet(s, order).map_err(at(s))?;
        let v = r_tension_jet(&cj, r).map_err(at(s))?;
        let mut row = vec![s, v[0], v[1], v[2], v.norm()];
        if r == 3 {
            // Frenet components are undefined on geodesics and left as NaN.
            let frenet = triharmonic_residual(&cj).map_err(at(s))?.frenet_vec.unwrap_or([f64::NAN; 3]);
            row.extend(frenet);
        }
        rows.push(row);
    }
    let mut header = vec!["s", "res1", "res2", "res3", "res_norm"];
    if r == 3 {
        header.extend(["res_T", "res_N", "res_B"]);
    }
    let mut table = CsvTable::new(out, &header)?;
    for row in &rows {
        table.row(row)?;
    }
    table.finish()
}

fn killing_table(out: &mut dyn Write, args: &CurveArgs, field: KillingField) -> Result<(), CliError> {
    let spec = load_curve(&args.curve)?;
    let mut rows = Vec::with_capacity(args.s_range.n);
    for s in args.s_range.values() {
        let angle = match killing_angle_with_tangent(&spec, field, s) {
            Ok(a) => a,
            Err(Error::ZeroField) => f64::NAN,
            Err(e) => return Err(at(s)(e)),
        };
        rows.push([s, killing_length_along(&spec, field, s), angle]);
    }
    let mut table = CsvTable::new(out, &["s", "length", "angle"])?;
    for row in &rows {
        table.row(row)?;
    }
    table.finish()
}

#[derive(Debug, Serialize)]
struct IntegrateSummary {
    steps: usize,
    max_drift: f64,
    /// Largest coordinate gap from the closed-form helix, when started on it.
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation_from_reference: Option<f64>,
}

fn integrate_table(
    out: &mut dyn Write,
    err: &mut dyn Write,
    (kappa, tau, step, s_max): (f64, f64, f64, f64),
    from_reference: bool,
    order: usize,
) -> Result<(), CliError> {
    let reference = build_triharmonic_helix(&TriharmonicHelixParams::reference())
        .map_err(|e| CliError::Verification(e.to_string()))?;
    let init = if from_reference {
        let f = frenet_frame(&reference.jet(0.0, order).map_err(at(0.0))?).map_err(at(0.0))?;
        FrenetState { p: f.point(), t: f.t.value(), n: f.n.value(), b: f.b.value() }
    } else {
        FrenetState { p: Point3::new(0.0, 0.0, 0.0), t: FrameVector::E1, n: FrameVector::E2, b: FrameVector::E3 }
    };
    let traj: Trajectory = integrate_frenet_natural(kappa, tau, &init, step, s_max).map_err(|e| match e {
        Error::FrameDrift { .. } => CliError::Verification(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let header = ["s", "x", "y", "z", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3"];
    let mut table = CsvTable::new(&mut *out, &header)?;
    for (s, st) in traj.s.iter().zip(&traj.states) {
        let mut row = vec![*s, st.p.x, st.p.y, st.p.z];
        row.extend(st.t.0.iter().chain(&st.n.0).chain(&st.b.0));
        table.row(&row)?;
    }
    table.finish()?;
    let summary = IntegrateSummary {
        steps: traj.s.len() - 1,
        max_drift: traj.max_drift,
        max_deviation_from_reference: from_reference.then(|| traj.max_deviation_from(&reference)),
    };
    writeln!(err, "{}", serde_json::to_string(&summary).expect("numeric summary serializes"))?;
    Ok(())
}

fn to_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let order = jet_order()?;
    match cli.command {
        Command::Verify { kappa, tau, r, samples, classify_samples, step, no_killing } => {
            if r < 2 {
                return Err(CliError::Usage(format!("--r {r}: the harmonicity order must be at least 2")));
            }
            let opts = VerifyOptions {
                kappa_target: kappa,
                tau_target: tau,
                r,
                samples,
                classify_samples,
                jet_order: order,
                step,
                killing: !no_killing,
                ..VerifyOptions::default()
            };
            let report = verify_theorem(&opts);
            to_json(out, &report)?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("failing checks: {}", failing_names(&report).join(", "))))
            }
        }
        Command::Frenet { curve } => frenet_table(out, &curve, order),
        Command::Residual { curve, r } => residual_table(out, &curve, r, order),
        Command::Classify { samples } => {
            let result = classify(samples).map_err(|e| match e {
                Error::InvalidParams(_) => CliError::Usage(e.to_string()),
                _ => CliError::Verification(e.to_string()),
            })?;
            to_json(out, &result)
        }
        Command::Integrate { kappa, tau, step, s_max, init_from_reference } => {
            integrate_table(out, err, (kappa, tau, step, s_max), init_from_reference, order)
        }
        Command::Killing { curve, field } => killing_table(out, &curve, field.into()),
    }
}

/// Parses `argv` (program name first) and runs the command; returns the exit
/// code: 0 on success, 1 on a failed verification, 2 on input errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            // clap spreads some messages over several lines; keep one.
            let text = e.to_string();
            let body = text.split("\n\n").next().unwrap_or_default();
            let line: Vec<&str> = body.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            let _ = writeln!(err, "error: {}", line.join(" ").trim_start_matches("error: "));
            return 2;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        // A closed downstream pipe (`| head`) is not an error of ours.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
