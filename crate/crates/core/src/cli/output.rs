use std::io::Write;

use serde::Serialize;

use super::CliError;

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest round-trip text of `x` rounded to 12 significant digits;
/// scientific notation below `1e-4` in magnitude.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round12(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// JSON-side rounding, mapping non-finite values to `null`.
fn json_num(x: Option<f64>) -> Option<f64> {
    x.filter(|v| v.is_finite()).map(round12)
}

pub fn ser_num<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    json_num(*x).serialize(s)
}

/// One radius result in the fixed column layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub family: String,
    #[serde(serialize_with = "ser_num")]
    pub b: Option<f64>,
    #[serde(serialize_with = "ser_num")]
    pub c: Option<f64>,
    pub region: String,
    #[serde(serialize_with = "ser_num")]
    pub alpha: Option<f64>,
    #[serde(serialize_with = "ser_num")]
    pub gamma: Option<f64>,
    #[serde(serialize_with = "ser_num")]
    pub radius: Option<f64>,
    pub method: String,
    #[serde(serialize_with = "ser_num")]
    pub residual: Option<f64>,
    pub sharp_claimed: bool,
    #[serde(serialize_with = "ser_num")]
    pub oracle_radius: Option<f64>,
    pub warning: String,
}

pub const RECORD_HEADER: [&str; 12] = [
    "family",
    "b",
    "c",
    "region",
    "alpha",
    "gamma",
    "radius",
    "method",
    "residual",
    "sharp_claimed",
    "oracle_radius",
    "warning",
];

impl Record {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            fmt_opt(self.b),
            fmt_opt(self.c),
            self.region.clone(),
            fmt_opt(self.alpha),
            fmt_opt(self.gamma),
            fmt_opt(self.radius),
            self.method.clone(),
            fmt_opt(self.residual),
            self.sharp_claimed.to_string(),
            fmt_opt(self.oracle_radius),
            self.warning.clone(),
        ]
    }
}

/// A table row: the fixed record plus the statement-equation radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub record: Record,
    #[serde(serialize_with = "ser_num")]
    pub radius_statement: Option<f64>,
    #[serde(serialize_with = "ser_num")]
    pub abs_diff: Option<f64>,
}

/// A sweep row: the fixed record plus the swept value and trend flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub record: Record,
    pub param: String,
    #[serde(serialize_with = "ser_num")]
    pub value: Option<f64>,
    /// `up`, `down` or `flat` relative to the previous row.
    pub trend: String,
    /// Whether the trend matches the expected monotonicity; `None` when no
    /// direction is expected.
    pub monotone_ok: Option<bool>,
}

pub trait Row: Serialize {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

impl Row for Record {
    fn header() -> Vec<&'static str> {
        RECORD_HEADER.to_vec()
    }

    fn cells(&self) -> Vec<String> {
        Record::cells(self)
    }
}

impl Row for TableRow {
    fn header() -> Vec<&'static str> {
        let mut h = RECORD_HEADER.to_vec();
        h.extend(["radius_statement", "abs_diff"]);
        h
    }

    fn cells(&self) -> Vec<String> {
        let mut c = self.record.cells();
        c.extend([fmt_opt(self.radius_statement), fmt_opt(self.abs_diff)]);
        c
    }
}

impl Row for SweepRow {
    fn header() -> Vec<&'static str> {
        let mut h = RECORD_HEADER.to_vec();
        h.extend(["param", "value", "trend", "monotone_ok"]);
        h
    }

    fn cells(&self) -> Vec<String> {
        let mut c = self.record.cells();
        c.extend([
            self.param.clone(),
            fmt_opt(self.value),
            self.trend.clone(),
            self.monotone_ok.map(|b| b.to_string()).unwrap_or_default(),
        ]);
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn write_rows<R: Row, W: Write>(rows: &[R], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::header()).map_err(CliError::io)?;
            for row in rows {
                w.write_record(row.cells()).map_err(CliError::io)?;
            }
            w.flush().map_err(CliError::io)
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(CliError::io)?;
            writeln!(out).map_err(CliError::io)
        }
    }
}
