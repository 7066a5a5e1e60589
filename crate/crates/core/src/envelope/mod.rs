//! Class parameters, the growth envelope of `zf'/f`, and the radius solvers.
//!
//! For `f` in any of the three classes and `|z| = r`, `zf'(z)/f(z)` lies in
//! the closed disk with center `a(r) = 1/(1 - r²)` and radius `L(r)`, where
//! `L` is assembled from the bilinear image of `1/(1 + z)` and the
//! logarithmic-derivative bounds for Carathéodory functions with a fixed
//! first coefficient:
//!
//! ```text
//! F1: L = r/(1-r²) [ (c'r²+4r+c')/(r²+c'r+1) + (dr²+4r+d)/(r²+dr+1) + 1 ]
//! F2: L = r/(1-r²) [ (c'r²+4r+c')/(r²+c'r+1) + (d'r²+2r+d')/(d'r+1)   + 1 ]
//! F3: L = r/(1-r²) [ (b'r²+4r+b')/(r²+b'r+1) + 1 ]
//! ```
//!
//! The radius for a region is the first `r` at which
//! `margin(r) = disk_bound(region, a(r)) - L(r)` reaches zero.

mod statement;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::regions::{disk_bound, RegionError, RegionSpec};
use crate::rootfind::{smallest_root, Polynomial, RootError, RootOutcome, DEFAULT_SCAN_N};

pub use statement::{
    discrepancies, discrepancy, equation, statement_equation, Discrepancy, EquationSource, RadicalEquation,
    StatementEquation,
};

/// Upper end of the radius domain, away from the pole of `1/(1 - r²)`.
pub const R_MAX: f64 = 1.0 - 1e-9;

/// Default bracket width for the radius solvers.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest admissible derived parameter (`c'`, `d`, `d'`, `b'`).
pub const DERIVED_MAX: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvelopeError {
    #[error("coefficient {name} = {value} is outside [-1, 1]")]
    CoefficientOutOfRange { name: &'static str, value: f64 },
    #[error("derived parameter {name} = {value} exceeds 2; the class hypothesis fails")]
    HypothesisViolated { name: &'static str, value: f64 },
    #[error("envelope parameter {name} = {value} must be finite and nonnegative")]
    InvalidEnvelope { name: &'static str, value: f64 },
    #[error("radius r = {0} is outside [0, 1 - 1e-9]")]
    RadiusOutOfRange(f64),
    #[error("no radius equation for family {family} and region {region}")]
    UnsupportedPair { family: Family, region: &'static str },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `Re f/g > 0` and `Re (1+z)g/z > 0`, `f = z + 5bz² + ⋯`, `g = z + 3cz² + ⋯`.
    F1,
    /// `|f/g - 1| < 1` and `Re (1+z)g/z > 0`, `f = z + 4bz² + ⋯`, `g = z + 3cz² + ⋯`.
    F2,
    /// `Re (1+z)f/z > 0`, `f = z + 3bz² + ⋯`.
    F3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1, Family::F2, Family::F3];

    /// Regions with a radius equation for this family.
    pub fn supported_regions(self, alpha: f64, gamma: f64) -> Vec<RegionSpec> {
        let all = RegionSpec::all(alpha, gamma);
        match self {
            Family::F1 | Family::F2 => all.to_vec(),
            Family::F3 => all[..4].to_vec(),
        }
    }

    pub fn supports(self, region: &RegionSpec) -> bool {
        match self {
            Family::F1 | Family::F2 => true,
            Family::F3 => region.part() <= 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Family::F1),
            "f2" => Ok(Family::F2),
            "f3" => Ok(Family::F3),
            other => Err(format!("unknown family {other:?} (expected f1, f2 or f3)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamWarning {
    /// `d' > 1`: accepted by the F2 hypothesis but beyond the coefficient
    /// bound of `P(1/2)` that the logarithmic-derivative lemma assumes.
    LemmaBoundExceeded { dp: f64 },
    /// A derived parameter exceeds 2; the envelope is evaluated anyway.
    OutsideHypothesis { name: String, value: f64 },
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::LemmaBoundExceeded { dp } => {
                write!(f, "d'={dp} exceeds 1, the coefficient bound for h in P(1/2)")
            }
            ParamWarning::OutsideHypothesis { name, value } => {
                write!(f, "{name}={value} exceeds 2; outside the theorem hypothesis")
            }
        }
    }
}

/// Family tag, fixed coefficients and the derived envelope parameters
/// `c' = |3c+1|`, `d = |5b-3c|`, `d' = |3c-4b|`, `b' = |1+3b|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassParams {
    family: Family,
    b: Option<f64>,
    c: Option<f64>,
    cp: f64,
    d: f64,
    dp: f64,
    bp: f64,
    warnings: Vec<ParamWarning>,
}

/// Validates `(b, c)` and derives the envelope parameters.
///
/// `c` is ignored for F3. Derived parameters above 2 are rejected; for F2 a
/// `d'` in `(1, 2]` is accepted with a [`ParamWarning::LemmaBoundExceeded`].
pub fn derive_params(family: Family, b: f64, c: f64) -> Result<ClassParams, EnvelopeError> {
    let params = ClassParams::extrapolated(family, b, c)?;
    for (name, value) in params.relevant() {
        if value > DERIVED_MAX {
            return Err(EnvelopeError::HypothesisViolated { name, value });
        }
    }
    Ok(params)
}

impl ClassParams {
    /// Like [`derive_params`] but keeps derived parameters above 2, recording
    /// a warning. The envelope formulas stay well defined; the extremal
    /// functions do not.
    pub fn extrapolated(family: Family, b: f64, c: f64) -> Result<Self, EnvelopeError> {
        check_coefficient("b", b)?;
        let c = match family {
            Family::F3 => None,
            _ => {
                check_coefficient("c", c)?;
                Some(c)
            }
        };
        let cv = c.unwrap_or(0.0);
        let mut params = ClassParams {
            family,
            b: Some(b),
            c,
            cp: (3.0 * cv + 1.0).abs(),
            d: (5.0 * b - 3.0 * cv).abs(),
            dp: (3.0 * cv - 4.0 * b).abs(),
            bp: (1.0 + 3.0 * b).abs(),
            warnings: Vec::new(),
        };
        if family != Family::F3 {
            params.zero_unused();
        } else {
            params.cp = 0.0;
            params.d = 0.0;
            params.dp = 0.0;
        }
        for (name, value) in params.relevant() {
            if value > DERIVED_MAX {
                params.warnings.push(ParamWarning::OutsideHypothesis {
                    name: name.to_string(),
                    value,
                });
            }
        }
        if family == Family::F2 && params.dp > 1.0 {
            params.warnings.push(ParamWarning::LemmaBoundExceeded { dp: params.dp });
        }
        Ok(params)
    }

    /// F1 envelope given directly by `(c', d)`.
    pub fn f1(cp: f64, d: f64) -> Result<Self, EnvelopeError> {
        Self::from_envelope(Family::F1, cp, d, 0.0, 0.0)
    }

    /// F2 envelope given directly by `(c', d')`.
    pub fn f2(cp: f64, dp: f64) -> Result<Self, EnvelopeError> {
        Self::from_envelope(Family::F2, cp, 0.0, dp, 0.0)
    }

    /// F3 envelope given directly by `b'`.
    pub fn f3(bp: f64) -> Result<Self, EnvelopeError> {
        Self::from_envelope(Family::F3, 0.0, 0.0, 0.0, bp)
    }

    fn from_envelope(family: Family, cp: f64, d: f64, dp: f64, bp: f64) -> Result<Self, EnvelopeError> {
        for (name, value) in [("c'", cp), ("d", d), ("d'", dp), ("b'", bp)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(EnvelopeError::InvalidEnvelope { name, value });
            }
        }
        let mut params = ClassParams {
            family,
            b: None,
            c: None,
            cp,
            d,
            dp,
            bp,
            warnings: Vec::new(),
        };
        for (name, value) in params.relevant() {
            if value > DERIVED_MAX {
                params.warnings.push(ParamWarning::OutsideHypothesis {
                    name: name.to_string(),
                    value,
                });
            }
        }
        if family == Family::F2 && dp > 1.0 {
            params.warnings.push(ParamWarning::LemmaBoundExceeded { dp });
        }
        Ok(params)
    }

    fn zero_unused(&mut self) {
        match self.family {
            Family::F1 => {
                self.dp = 0.0;
                self.bp = 0.0;
            }
            Family::F2 => {
                self.d = 0.0;
                self.bp = 0.0;
            }
            Family::F3 => {}
        }
    }

    /// The derived parameters the family's envelope depends on.
    fn relevant(&self) -> Vec<(&'static str, f64)> {
        match self.family {
            Family::F1 => vec![("c'", self.cp), ("d", self.d)],
            Family::F2 => vec![("c'", self.cp), ("d'", self.dp)],
            Family::F3 => vec![("b'", self.bp)],
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn b(&self) -> Option<f64> {
        self.b
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    pub fn cp(&self) -> f64 {
        self.cp
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn dp(&self) -> f64 {
        self.dp
    }

    pub fn bp(&self) -> f64 {
        self.bp
    }

    pub fn warnings(&self) -> &[ParamWarning] {
        &self.warnings
    }

    /// False when some derived parameter exceeds 2.
    pub fn within_hypothesis(&self) -> bool {
        !self
            .warnings
            .iter()
            .any(|w| matches!(w, ParamWarning::OutsideHypothesis { .. }))
    }
}

fn check_coefficient(name: &'static str, value: f64) -> Result<(), EnvelopeError> {
    if value.is_finite() && value.abs() <= 1.0 {
        Ok(())
    } else {
        Err(EnvelopeError::CoefficientOutOfRange { name, value })
    }
}

fn check_radius(r: f64) -> Result<(), EnvelopeError> {
    if (0.0..=R_MAX).contains(&r) {
        Ok(())
    } else {
        Err(EnvelopeError::RadiusOutOfRange(r))
    }
}

/// Logarithmic-derivative bound for a Carathéodory function with
/// `|p'(0)| / 2 = s / 2`, without the `r/(1-r²)` prefactor.
fn caratheodory_term(s: f64, r: f64) -> f64 {
    (s * r * r + 4.0 * r + s) / (r * r + s * r + 1.0)
}

/// Same bound for `h` in `P(1/2)` with `|h'(0)| = s`.
fn half_order_term(s: f64, r: f64) -> f64 {
    (s * r * r + 2.0 * r + s) / (s * r + 1.0)
}

/// Center `a(r)` and radius `L(r)` of the disk containing `zf'/f` on `|z| = r`.
pub fn growth(class: &ClassParams, r: f64) -> Result<(f64, f64), EnvelopeError> {
    check_radius(r)?;
    let q = 1.0 - r * r;
    let bracket = match class.family {
        Family::F1 => caratheodory_term(class.cp, r) + caratheodory_term(class.d, r) + 1.0,
        Family::F2 => caratheodory_term(class.cp, r) + half_order_term(class.dp, r) + 1.0,
        Family::F3 => caratheodory_term(class.bp, r) + 1.0,
    };
    Ok((1.0 / q, r / q * bracket))
}

/// Polynomials `(N, Q)` with `L(r) = N(r) / ((1 - r²) Q(r))`.
pub fn envelope_quotient(class: &ClassParams) -> (Polynomial, Polynomial) {
    match class.family {
        Family::F1 => {
            let (s, p) = (class.cp + class.d, class.cp * class.d);
            (
                Polynomial::new(vec![
                    0.0,
                    1.0 + s,
                    8.0 + s + 2.0 * p,
                    2.0 + 6.0 * s + p,
                    8.0 + s + 2.0 * p,
                    1.0 + s,
                ]),
                Polynomial::new(vec![1.0, s, 2.0 + p, s, 1.0]),
            )
        }
        Family::F2 => {
            let (cp, dp) = (class.cp, class.dp);
            let (s, p) = (cp + dp, cp * dp);
            (
                Polynomial::new(vec![
                    0.0,
                    1.0 + s,
                    6.0 + s + 2.0 * p,
                    1.0 + 3.0 * (cp + 2.0 * dp) + p,
                    2.0 + dp + 2.0 * p,
                    dp,
                ]),
                Polynomial::new(vec![1.0, s, 1.0 + p, dp]),
            )
        }
        Family::F3 => {
            let bp = class.bp;
            (
                Polynomial::new(vec![0.0, 1.0 + bp, 4.0 + bp, 1.0 + bp]),
                Polynomial::new(vec![1.0, bp, 1.0]),
            )
        }
    }
}

/// `disk_bound(region, a(r)) - L(r)`; `-∞` where the RationalRL bound is
/// infeasible.
pub fn margin(class: &ClassParams, region: &RegionSpec, r: f64) -> Result<f64, EnvelopeError> {
    let (a, l) = growth(class, r)?;
    match disk_bound(region, a) {
        Ok(bound) => Ok(bound - l),
        Err(RegionError::InfeasibleCenter { .. }) => Ok(f64::NEG_INFINITY),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    StatementPolynomial,
    EnvelopeCrossing,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::StatementPolynomial => "statement-polynomial",
            Method::EnvelopeCrossing => "envelope-crossing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub radius: f64,
    pub method: Method,
    /// `|margin|` (crossing) or `|equation|` (statement) at `radius`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub oracle_radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusOutcome {
    Radius(RadiusResult),
    /// No sign change on `(0, 1 - 1e-9)`: the property holds on the whole disk.
    WholeDisk {
        method: Method,
    },
}

impl RadiusOutcome {
    pub fn radius(&self) -> Option<f64> {
        match self {
            RadiusOutcome::Radius(r) => Some(r.radius),
            RadiusOutcome::WholeDisk { .. } => None,
        }
    }

    pub fn result(&self) -> Option<&RadiusResult> {
        match self {
            RadiusOutcome::Radius(r) => Some(r),
            RadiusOutcome::WholeDisk { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub scan_n: usize,
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            scan_n: DEFAULT_SCAN_N,
            tol: DEFAULT_TOL,
        }
    }
}

fn solve<F: Fn(f64) -> f64>(f: F, method: Method, opts: &SolverOptions) -> Result<RadiusOutcome, EnvelopeError> {
    Ok(match smallest_root(f, 0.0, R_MAX, opts.scan_n, opts.tol)? {
        RootOutcome::Root(root) => RadiusOutcome::Radius(RadiusResult {
            radius: root.value,
            method,
            residual: root.residual,
            bracket: root.bracket,
            oracle_radius: None,
        }),
        RootOutcome::NoRoot => RadiusOutcome::WholeDisk { method },
    })
}

fn check_pair(class: &ClassParams, region: &RegionSpec) -> Result<(), EnvelopeError> {
    region.validated()?;
    if class.family.supports(region) {
        Ok(())
    } else {
        Err(EnvelopeError::UnsupportedPair {
            family: class.family,
            region: region.name(),
        })
    }
}

/// Radius as the first zero of [`margin`]. This is the canonical value.
pub fn radius_by_crossing(class: &ClassParams, region: &RegionSpec) -> Result<RadiusOutcome, EnvelopeError> {
    radius_by_crossing_with(class, region, &SolverOptions::default())
}

pub fn radius_by_crossing_with(
    class: &ClassParams,
    region: &RegionSpec,
    opts: &SolverOptions,
) -> Result<RadiusOutcome, EnvelopeError> {
    check_pair(class, region)?;
    solve(
        |r| margin(class, region, r).unwrap_or(f64::NAN),
        Method::EnvelopeCrossing,
        opts,
    )
}

/// Radius as the smallest root of the equation displayed in the theorem
/// statement.
pub fn radius_by_statement(class: &ClassParams, region: &RegionSpec) -> Result<RadiusOutcome, EnvelopeError> {
    radius_by_equation(class, region, EquationSource::Statement, &SolverOptions::default())
}

/// Radius from either the statement or the proof version of the equation.
pub fn radius_by_equation(
    class: &ClassParams,
    region: &RegionSpec,
    source: EquationSource,
    opts: &SolverOptions,
) -> Result<RadiusOutcome, EnvelopeError> {
    check_pair(class, region)?;
    let eq = equation(class, region, source)?;
    solve(|r| eq.eval(r), Method::StatementPolynomial, opts)
}
