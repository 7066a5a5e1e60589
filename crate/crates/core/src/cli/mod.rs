//! The `starlike-radius` command-line front end.
//!
//! Exit codes: 0 success, 1 bad input, 2 unsupported family/region pair or
//! missing extremal, 3 verification failure.

pub mod output;
mod plot;
mod verify;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::envelope::{
    derive_params, discrepancy, radius_by_crossing_with, radius_by_equation, ClassParams, EnvelopeError,
    EquationSource, Family, RadiusOutcome, SolverOptions, DEFAULT_TOL,
};
use crate::oracle::{oracle_radius, sharp_claimed, BruteOptions, OracleError};
use crate::regions::{RegionError, RegionSpec};
use crate::rootfind::DEFAULT_SCAN_N;

use output::{fmt_num, write_rows, Format, Record, SweepRow, TableRow};

pub use verify::{run_suite, CheckResult, SuiteOptions};

/// Environment variable overriding the root-scan resolution.
pub const SCAN_N_ENV: &str = "STARLIKE_RADIUS_SCAN_N";

const NO_EXTREMAL: &str = "no extremal printed";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn bad_input(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn io(e: impl fmt::Display) -> Self {
        CliError::bad_input(format!("output error: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::UnsupportedPair { .. } => CliError::unsupported(e.to_string()),
            _ => CliError::bad_input(e.to_string()),
        }
    }
}

impl From<RegionError> for CliError {
    fn from(e: RegionError) -> Self {
        CliError::bad_input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::UnsupportedExtremal(_) | OracleError::NoSharpnessClaim { .. } => {
                CliError::unsupported(e.to_string())
            }
            OracleError::Envelope(inner) => inner.into(),
            _ => CliError::bad_input(e.to_string()),
        }
    }
}

/// Radii of starlikeness for quotient classes with a fixed second coefficient.
#[derive(Debug, Parser)]
#[command(name = "starlike-radius", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Radius for one class and one region.
    Radius(RadiusArgs),
    /// Radii for every region supported by one class.
    Table(TableArgs),
    /// Radius along a one-parameter grid.
    Sweep(SweepArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// SVG of the extremal image curve touching the region boundary.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct ClassArgs {
    /// Class: f1, f2 or f3.
    #[arg(long)]
    family: Family,
    /// Second-coefficient parameter b, in [-1, 1].
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    /// Coefficient parameter c of g, in [-1, 1] (ignored for f3).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
}

#[derive(Debug, Args)]
struct RegionArgs {
    /// Target region: halfplane, lemniscate, parabola, exponential, cardioid,
    /// sine, lune, rational-r, rational-rl, sector, nephroid or sigmoid.
    #[arg(long)]
    region: String,
    #[command(flatten)]
    params: RegionParams,
}

#[derive(Debug, Args)]
struct RegionParams {
    /// Order of starlikeness for the half-plane, in [0, 1).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Order of strong starlikeness for the sector, in (0, 1].
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    gamma: f64,
}

impl RegionArgs {
    fn spec(&self) -> Result<RegionSpec, CliError> {
        Ok(RegionSpec::from_name(
            &self.region,
            self.params.alpha,
            self.params.gamma,
        )?)
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Bracket width for the root solver.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Scan resolution; overrides STARLIKE_RADIUS_SCAN_N.
    #[arg(long)]
    scan_n: Option<usize>,
}

impl SolverArgs {
    fn options(&self) -> Result<SolverOptions, CliError> {
        let scan_n = match self.scan_n {
            Some(n) => n,
            None => match std::env::var(SCAN_N_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::bad_input(format!("{SCAN_N_ENV}={v:?} is not a positive integer")))?,
                Err(_) => DEFAULT_SCAN_N,
            },
        };
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::bad_input(format!("tol = {} must be positive", self.tol)));
        }
        Ok(SolverOptions { scan_n, tol: self.tol })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// First zero of the disk-bound margin.
    Crossing,
    /// Smallest root of the displayed theorem equation.
    Statement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RadiusFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    region: RegionArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Solver used for the reported radius.
    #[arg(long, value_enum, default_value_t = Method::Crossing)]
    method: Method,
    #[arg(long, value_enum, default_value_t = RadiusFormat::Text)]
    format: RadiusFormat,
    /// Also measure the radius of the extremal functions by brute force.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    params: RegionParams,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Skip the brute-force oracle column.
    #[arg(long)]
    no_oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    B,
    C,
    Alpha,
    Gamma,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::B => "b",
            SweepParam::C => "c",
            SweepParam::Alpha => "alpha",
            SweepParam::Gamma => "gamma",
        })
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    region: RegionArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Parameter to vary.
    #[arg(long, value_enum)]
    param: SweepParam,
    /// First grid value.
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    /// Last grid value.
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    /// Number of grid points, including both ends.
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Run the envelope and equation checks only.
    #[arg(long)]
    skip_oracle: bool,
    /// Perturb the statement equations (exercises the failure path).
    #[arg(long, hide = true)]
    corrupt_statement: bool,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    region: RegionArgs,
    /// SVG output path.
    #[arg(long)]
    output: PathBuf,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 600)]
    size: u32,
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Radius(a) => cmd_radius(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Plot(a) => plot::cmd_plot(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn warnings_of(class: &ClassParams) -> Vec<String> {
    class.warnings().iter().map(|w| w.to_string()).collect()
}

/// Brute-force radius of the extremals, or a note explaining its absence.
fn oracle_column(class: &ClassParams, region: &RegionSpec) -> (Option<f64>, Option<String>) {
    if class.family() == Family::F2 {
        return (None, Some(NO_EXTREMAL.into()));
    }
    match oracle_radius(class, region, &BruteOptions::default()) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(format!("oracle unavailable: {e}"))),
    }
}

fn record(
    class: &ClassParams,
    region: &RegionSpec,
    outcome: &RadiusOutcome,
    oracle: Option<f64>,
    mut warnings: Vec<String>,
) -> Record {
    let (radius, method, residual) = match outcome {
        RadiusOutcome::Radius(r) => (Some(r.radius), r.method, Some(r.residual)),
        RadiusOutcome::WholeDisk { method } => {
            warnings.push("no sign change on (0, 1): the property holds on the whole disk".into());
            (None, *method, None)
        }
    };
    Record {
        family: class.family().to_string(),
        b: class.b(),
        c: class.c(),
        region: region.name().to_string(),
        alpha: region.alpha(),
        gamma: region.gamma(),
        radius,
        method: method.to_string(),
        residual,
        sharp_claimed: sharp_claimed(class.family(), region),
        oracle_radius: oracle,
        warning: warnings.join("; "),
    }
}

fn cmd_radius(a: &RadiusArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let class = derive_params(a.class.family, a.class.b, a.class.c)?;
    let region = a.region.spec()?;
    let opts = a.solver.options()?;
    let outcome = match a.method {
        Method::Crossing => radius_by_crossing_with(&class, &region, &opts)?,
        Method::Statement => radius_by_equation(&class, &region, EquationSource::Statement, &opts)?,
    };
    let mut warnings = warnings_of(&class);
    let oracle = if a.oracle {
        let (value, note) = oracle_column(&class, &region);
        warnings.extend(note);
        value
    } else {
        None
    };
    let rec = record(&class, &region, &outcome, oracle, warnings);
    match a.format {
        RadiusFormat::Text => {
            let radius = rec.radius.map(fmt_num).unwrap_or_else(|| "none".into());
            let mut line = format!("radius={radius} method={}", rec.method);
            if let Some(r) = outcome.result() {
                line += &format!(
                    " residual={} bracket=[{}, {}]",
                    fmt_num(r.residual),
                    fmt_num(r.bracket.0),
                    fmt_num(r.bracket.1)
                );
            }
            if let Some(o) = rec.oracle_radius {
                line += &format!(" oracle_radius={}", fmt_num(o));
            }
            if !rec.warning.is_empty() {
                line += &format!(" warning={:?}", rec.warning);
            }
            writeln!(out, "{line}").map_err(CliError::io)
        }
        RadiusFormat::Csv => write_rows(&[rec], Format::Csv, out),
        RadiusFormat::Json => write_rows(&[rec], Format::Json, out),
    }
}

fn with_output<F>(path: &Option<PathBuf>, out: &mut dyn Write, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| CliError::bad_input(format!("cannot write {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(CliError::io)
        }
        None => f(out),
    }
}

/// One table row per supported region, computed in parallel.
pub fn table_rows(
    class: &ClassParams,
    alpha: f64,
    gamma: f64,
    opts: &SolverOptions,
    oracle: bool,
) -> Result<Vec<TableRow>, CliError> {
    RegionSpec::half_plane(alpha)?;
    RegionSpec::sector(gamma)?;
    class
        .family()
        .supported_regions(alpha, gamma)
        .par_iter()
        .map(|region| -> Result<TableRow, CliError> {
            let crossing = radius_by_crossing_with(class, region, opts)?;
            let statement = radius_by_equation(class, region, EquationSource::Statement, opts)?;
            let mut warnings = warnings_of(class);
            if let Some(d) = discrepancy(class.family(), region) {
                warnings.push(format!(
                    "statement equation differs from its proof: {} vs {}",
                    d.statement, d.proof
                ));
            }
            let oracle_value = if oracle {
                let (value, note) = oracle_column(class, region);
                warnings.extend(note);
                value
            } else {
                None
            };
            let abs_diff = match (crossing.radius(), statement.radius()) {
                (Some(x), Some(y)) => Some((x - y).abs()),
                _ => None,
            };
            Ok(TableRow {
                record: record(class, region, &crossing, oracle_value, warnings),
                radius_statement: statement.radius(),
                abs_diff,
            })
        })
        .collect()
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let class = derive_params(a.class.family, a.class.b, a.class.c)?;
    let opts = a.solver.options()?;
    let rows = table_rows(&class, a.params.alpha, a.params.gamma, &opts, !a.no_oracle)?;
    with_output(&a.output, out, |w| write_rows(&rows, a.format, w))
}

/// Tolerance below which two sweep radii count as equal.
const TREND_EPS: f64 = 1e-10;

/// Expected sign of the radius change between two sweep points, or `None`
/// when the parameters move in mixed directions. `Some(0)` means flat.
///
/// The radius is non-increasing in each derived parameter, strictly
/// decreasing in `alpha` and non-decreasing in `gamma`.
fn expected_direction(
    param: SweepParam,
    prev: &(ClassParams, RegionSpec),
    cur: &(ClassParams, RegionSpec),
) -> Option<(i8, bool)> {
    match param {
        SweepParam::Alpha => {
            let d = cur.1.alpha()? - prev.1.alpha()?;
            Some((-(d.signum() as i8), true))
        }
        SweepParam::Gamma => {
            let d = cur.1.gamma()? - prev.1.gamma()?;
            Some((d.signum() as i8, false))
        }
        SweepParam::B | SweepParam::C => {
            let derived = |c: &ClassParams| match c.family() {
                Family::F1 => vec![c.cp(), c.d()],
                Family::F2 => vec![c.cp(), c.dp()],
                Family::F3 => vec![c.bp()],
            };
            let deltas: Vec<f64> = derived(&cur.0)
                .iter()
                .zip(derived(&prev.0))
                .map(|(x, y)| x - y)
                .collect();
            let up = deltas.iter().any(|&d| d > 1e-12);
            let down = deltas.iter().any(|&d| d < -1e-12);
            match (up, down) {
                (true, true) => None,
                (true, false) => Some((-1, false)),
                (false, true) => Some((1, false)),
                (false, false) => Some((0, false)),
            }
        }
    }
}

fn sweep_point(a: &SweepArgs, value: f64) -> Result<(ClassParams, RegionSpec), CliError> {
    let (mut b, mut c) = (a.class.b, a.class.c);
    let (mut alpha, mut gamma) = (a.region.params.alpha, a.region.params.gamma);
    match a.param {
        SweepParam::B => b = value,
        SweepParam::C => c = value,
        SweepParam::Alpha => alpha = value,
        SweepParam::Gamma => gamma = value,
    }
    let region = RegionSpec::from_name(&a.region.region, alpha, gamma)?;
    let class = ClassParams::extrapolated(a.class.family, b, c)?;
    Ok((class, region))
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.steps == 0 {
        return Err(CliError::bad_input("empty range: --steps must be at least 1"));
    }
    if !(a.from.is_finite() && a.to.is_finite()) {
        return Err(CliError::bad_input("--from and --to must be finite"));
    }
    let base = a.region.spec()?;
    match (a.param, base) {
        (SweepParam::Alpha, RegionSpec::HalfPlane { .. }) | (SweepParam::Gamma, RegionSpec::Sector { .. }) => {}
        (SweepParam::Alpha, _) => return Err(CliError::bad_input("--param alpha needs --region halfplane")),
        (SweepParam::Gamma, _) => return Err(CliError::bad_input("--param gamma needs --region sector")),
        (SweepParam::C, _) if a.class.family == Family::F3 => return Err(CliError::bad_input("f3 has no parameter c")),
        _ => {}
    }
    let opts = a.solver.options()?;
    let values: Vec<f64> = (0..a.steps)
        .map(|i| {
            if a.steps == 1 {
                a.from
            } else {
                a.from + (a.to - a.from) * i as f64 / (a.steps - 1) as f64
            }
        })
        .collect();
    let points: Vec<(ClassParams, RegionSpec)> = values.iter().map(|&v| sweep_point(a, v)).collect::<Result<_, _>>()?;
    let outcomes: Vec<RadiusOutcome> = points
        .par_iter()
        .map(|(class, region)| radius_by_crossing_with(class, region, &opts))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        let (class, region) = &points[i];
        let rec = record(class, region, &outcomes[i], None, warnings_of(class));
        let (trend, monotone_ok) = match (
            i.checked_sub(1).and_then(|j| outcomes[j].radius()),
            outcomes[i].radius(),
        ) {
            (Some(prev), Some(cur)) => {
                let dr = cur - prev;
                let trend = if dr > TREND_EPS {
                    "up"
                } else if dr < -TREND_EPS {
                    "down"
                } else {
                    "flat"
                };
                let ok = expected_direction(a.param, &points[i - 1], &points[i]).map(|(dir, strict)| match dir {
                    -1 if strict => dr < 0.0,
                    -1 => dr <= TREND_EPS,
                    1 if strict => dr > 0.0,
                    1 => dr >= -TREND_EPS,
                    _ => dr.abs() <= TREND_EPS,
                });
                (trend.to_string(), ok)
            }
            _ => (String::new(), None),
        };
        rows.push(SweepRow {
            record: rec,
            param: a.param.to_string(),
            value: Some(values[i]),
            trend,
            monotone_ok,
        });
    }
    with_output(&a.output, out, |w| write_rows(&rows, a.format, w))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = SuiteOptions {
        skip_oracle: a.skip_oracle,
        corrupt_statement: a.corrupt_statement,
    };
    let results = run_suite(&opts);
    let mut failed = Vec::new();
    for r in &results {
        writeln!(
            out,
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        )
        .map_err(CliError::io)?;
        if !r.passed {
            failed.push(r.name.clone());
        }
    }
    writeln!(out, "statement/proof discrepancies:").map_err(CliError::io)?;
    for d in crate::envelope::discrepancies() {
        writeln!(
            out,
            "  {} {}: statement has {}; proof has {}; the {} form matches the envelope",
            d.family, d.region, d.statement, d.proof, d.consistent
        )
        .map_err(CliError::io)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::verification(format!("failed checks: {}", failed.join(", "))))
    }
}
