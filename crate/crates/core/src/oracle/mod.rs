//! Independent checks on the analytic radii: the extremal functions, their
//! logarithmic derivatives, brute-force radius measurement, boundary
//! contact at the theorem radius, and a numerical test of the
//! logarithmic-derivative bound for `P_b(α)`.

mod brute;
mod lemma;
mod sharpness;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::envelope::{ClassParams, EnvelopeError, Family};
use crate::regions::{RegionError, RegionSpec};
use crate::rootfind::Polynomial;

pub use brute::{brute_radius, oracle_radius, BruteOptions};
pub use lemma::{lemma1_bound, lemma1_check};
pub use sharpness::{
    contact_spec, extremal_attains_envelope, sharp_claimed, verify_sharpness, ContactSpec, SharpnessReport,
};

/// Radial rings of the construction-time membership grid.
const GRID_RINGS: usize = 64;
/// Angles of the construction-time membership grid.
const GRID_ANGLES: usize = 128;
/// Outer radius of every validation grid.
const GRID_MAX_RADIUS: f64 = 0.999;
/// Rings of the denominator grid; with [`GRID_ANGLES`] this is over 10⁴ points.
const DENOMINATOR_RINGS: usize = 80;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("no extremal function is available for family {0}")]
    UnsupportedExtremal(Family),
    #[error("no sharpness claim for family {family} and region {region}")]
    NoSharpnessClaim { family: Family, region: &'static str },
    #[error("extremal construction failed: {0}")]
    Construction(String),
    #[error("pole at z = {0}")]
    Pole(Complex64),
    #[error("f vanishes at z = {0} away from the origin")]
    Zero(Complex64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("membership of w = {w} stays indeterminate after refinement (sample radius {rho})")]
    Indeterminate { w: Complex64, rho: f64 },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}

fn poly(coeffs: &[f64]) -> Polynomial {
    Polynomial::new(coeffs.to_vec())
}

/// `N(z) / D(z)` with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
    log: LogDerivative,
}

/// `N` and `D` with their zeros at the origin divided out, and derivatives,
/// so that `zf'/f = order + z (n'/n - d'/d)`.
#[derive(Debug, Clone, PartialEq)]
struct LogDerivative {
    order: f64,
    n: Polynomial,
    dn: Polynomial,
    d: Polynomial,
    dd: Polynomial,
}

impl LogDerivative {
    fn new(numerator: &Polynomial, denominator: &Polynomial) -> Self {
        let k = numerator.zero_order();
        let m = denominator.zero_order();
        let n = numerator.shift_down(k);
        let d = denominator.shift_down(m);
        LogDerivative {
            order: k as f64 - m as f64,
            dn: n.derivative(),
            dd: d.derivative(),
            n,
            d,
        }
    }
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self, OracleError> {
        if denominator.is_zero() {
            return Err(OracleError::InvalidArgument("zero denominator".into()));
        }
        let log = LogDerivative::new(&numerator, &denominator);
        Ok(RationalFunction {
            numerator,
            denominator,
            log,
        })
    }

    /// Product of factors, each given by its ascending coefficients.
    fn from_factors(num: &[&[f64]], den: &[&[f64]]) -> Self {
        let product = |fs: &[&[f64]]| fs.iter().fold(Polynomial::constant(1.0), |acc, c| &acc * &poly(c));
        let (numerator, denominator) = (product(num), product(den));
        let log = LogDerivative::new(&numerator, &denominator);
        RationalFunction {
            numerator,
            denominator,
            log,
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, OracleError> {
        let d = self.denominator.eval_complex(z);
        if d == Complex64::new(0.0, 0.0) {
            return Err(OracleError::Pole(z));
        }
        Ok(self.numerator.eval_complex(z) / d)
    }

    /// `z f'(z) / f(z)`, with the removable singularity at `z = 0` resolved by
    /// dividing out the zero of the numerator there.
    pub fn log_deriv(&self, z: Complex64) -> Result<Complex64, OracleError> {
        let l = &self.log;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(l.order, 0.0));
        }
        let dv = l.d.eval_complex(z);
        if dv == Complex64::new(0.0, 0.0) {
            return Err(OracleError::Pole(z));
        }
        let nv = l.n.eval_complex(z);
        if nv == Complex64::new(0.0, 0.0) {
            return Err(OracleError::Zero(z));
        }
        Ok(l.order + z * (l.dn.eval_complex(z) / nv - l.dd.eval_complex(z) / dv))
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &RationalFunction, tol: f64) -> bool {
        let lhs = &self.numerator * &other.denominator;
        let rhs = &other.numerator * &self.denominator;
        lhs.max_coeff_diff(&rhs) <= tol
    }
}

/// `w(z) = z (z + a) / (1 + a z)`, a self-map of the disk fixing 0 when
/// `|a| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzBlock {
    a: f64,
}

impl SchwarzBlock {
    pub fn new(a: f64) -> Result<Self, OracleError> {
        if a.is_finite() && a.abs() <= 1.0 {
            Ok(SchwarzBlock { a })
        } else {
            Err(OracleError::InvalidArgument(format!(
                "Schwarz parameter {a} is outside [-1, 1]"
            )))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        z * (z + self.a) / (1.0 + self.a * z)
    }

    /// `w'(z) = (a z² + 2z + a) / (1 + a z)²`, with the numerator in
    /// factored form so that it stays accurate near its roots.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let a = self.a;
        let q = 1.0 + a * z;
        let num = if a == 0.0 {
            2.0 * z
        } else {
            let s = 1.0 + (1.0 - a * a).sqrt();
            a * (z + a / s) * (z + s / a)
        };
        num / (q * q)
    }

    /// `1 - w(z) = (1 - z²) / (1 + a z)`.
    pub fn one_minus(&self, z: Complex64) -> Complex64 {
        (1.0 - z) * (1.0 + z) / (1.0 + self.a * z)
    }
}

/// Contact point of an extremal with the region boundary: `z = +r` or
/// `z = -r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Plus,
    Minus,
}

impl Contact {
    pub fn sign(self) -> f64 {
        match self {
            Contact::Plus => 1.0,
            Contact::Minus => -1.0,
        }
    }
}

/// An extremal member of the class: `f`, and for F1 the partner `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremal {
    pub family: Family,
    pub contact: Contact,
    pub f: RationalFunction,
    pub g: Option<RationalFunction>,
    /// Signed parameters `(5b-3c, 3c+1)` for F1, `(1+3b, 0)` for F3.
    pub signed: (f64, f64),
}

/// Signed coefficients of the Carathéodory factors. Classes built from
/// envelope parameters alone take the sign-aligned choice
/// `5b-3c = -d`, `3c+1 = -c'`, `1+3b = -b'`.
fn signed_params(class: &ClassParams) -> Result<(f64, f64), OracleError> {
    match class.family() {
        Family::F1 => Ok(match (class.b(), class.c()) {
            (Some(b), Some(c)) => (5.0 * b - 3.0 * c, 3.0 * c + 1.0),
            _ => (-class.d(), -class.cp()),
        }),
        Family::F3 => Ok((class.b().map(|b| 1.0 + 3.0 * b).unwrap_or(-class.bp()), 0.0)),
        Family::F2 => Err(OracleError::UnsupportedExtremal(Family::F2)),
    }
}

/// The extremal function touching the region boundary at `contact`.
///
/// F1 has two forms, one for each contact point:
///
/// ```text
/// +r: f = z(1-z)²(1+z) / ((1-Dz+z²)(1-Cz+z²)),   g = z(1-z) / (1-Cz+z²)
/// -r: f = z(1+Dz+z²)(1+Cz+z²) / ((1-z²)²(1+z)),  g = z(1+Cz+z²) / ((1-z²)(1+z))
/// ```
///
/// with `D = 5b-3c`, `C = 3c+1`. F3 has the single form
/// `f = z(1+Bz+z²) / ((1+z)(1-z²))`, `B = 1+3b`, for both points.
/// Class membership is checked on a polar grid before returning.
pub fn build_extremal(class: &ClassParams, contact: Contact) -> Result<Extremal, OracleError> {
    let (p, q) = signed_params(class)?;
    let extremal = match (class.family(), contact) {
        (Family::F1, Contact::Plus) => Extremal {
            family: Family::F1,
            contact,
            f: RationalFunction::from_factors(
                &[&[0.0, 1.0], &[1.0, -2.0, 1.0], &[1.0, 1.0]],
                &[&[1.0, -p, 1.0], &[1.0, -q, 1.0]],
            ),
            g: Some(RationalFunction::from_factors(
                &[&[0.0, 1.0], &[1.0, -1.0]],
                &[&[1.0, -q, 1.0]],
            )),
            signed: (p, q),
        },
        (Family::F1, Contact::Minus) => Extremal {
            family: Family::F1,
            contact,
            f: RationalFunction::from_factors(
                &[&[0.0, 1.0], &[1.0, p, 1.0], &[1.0, q, 1.0]],
                &[&[1.0, 0.0, -1.0], &[1.0, 0.0, -1.0], &[1.0, 1.0]],
            ),
            g: Some(RationalFunction::from_factors(
                &[&[0.0, 1.0], &[1.0, q, 1.0]],
                &[&[1.0, 0.0, -1.0], &[1.0, 1.0]],
            )),
            signed: (p, q),
        },
        (Family::F3, _) => Extremal {
            family: Family::F3,
            contact,
            f: RationalFunction::from_factors(&[&[0.0, 1.0], &[1.0, p, 1.0]], &[&[1.0, 1.0], &[1.0, 0.0, -1.0]]),
            g: None,
            signed: (p, q),
        },
        (Family::F2, _) => unreachable!("rejected by signed_params"),
    };
    extremal.validate()?;
    Ok(extremal)
}

/// The extremal whose contact point matches the region, or the `+r` form
/// for regions without a designated contact.
pub fn extremal_for(class: &ClassParams, region: &RegionSpec) -> Result<Extremal, OracleError> {
    let contact = contact_spec(region).map(|c| c.point).unwrap_or(Contact::Plus);
    build_extremal(class, contact)
}

/// Every distinct extremal of the family: two for F1, one for F3.
pub fn extremals(class: &ClassParams) -> Result<Vec<Extremal>, OracleError> {
    match class.family() {
        Family::F1 => Ok(vec![
            build_extremal(class, Contact::Plus)?,
            build_extremal(class, Contact::Minus)?,
        ]),
        Family::F3 => Ok(vec![build_extremal(class, Contact::Plus)?]),
        Family::F2 => Err(OracleError::UnsupportedExtremal(Family::F2)),
    }
}

/// Points `ρ e^{iθ}` with `ρ = 0.999 (j+1)/rings`, `θ = 2πk/angles`.
fn polar_grid(rings: usize, angles: usize) -> impl Iterator<Item = Complex64> {
    (1..=rings).flat_map(move |j| {
        let rho = GRID_MAX_RADIUS * j as f64 / rings as f64;
        (0..angles).map(move |k| Complex64::from_polar(rho, 2.0 * PI * k as f64 / angles as f64))
    })
}

impl Extremal {
    /// `f/g` for F1; `None` for F3.
    pub fn quotient(&self, z: Complex64) -> Option<Result<Complex64, OracleError>> {
        let g = self.g.as_ref()?;
        Some(self.f.eval(z).and_then(|f| Ok(f / g.eval(z)?)))
    }

    /// `(1+z) h(z) / z` where `h` is `g` (F1) or `f` (F3).
    pub fn normalized(&self, z: Complex64) -> Result<Complex64, OracleError> {
        let h = self.g.as_ref().unwrap_or(&self.f);
        Ok((1.0 + z) * h.eval(z)? / z)
    }

    /// Schwarz blocks for `f/g` and `(1+z)g/z` (F1) or `(1+z)f/z` (F3).
    pub fn schwarz_blocks(&self) -> Result<Vec<SchwarzBlock>, OracleError> {
        let s = self.contact.sign();
        let (p, q) = self.signed;
        // +r form: (1-w)/(1+w) with w = z(z - p/2)/(1 - pz/2); -r form: (1+w)/(1-w)
        match self.family {
            Family::F1 => Ok(vec![SchwarzBlock::new(-s * p / 2.0)?, SchwarzBlock::new(-s * q / 2.0)?]),
            _ => Ok(vec![SchwarzBlock::new(p / 2.0)?]),
        }
    }

    /// `z f'/f` assembled from the Schwarz blocks as
    /// `zp'/p + zh'/h + 1/(1+z)` (F1) or `zh'/h + 1/(1+z)` (F3).
    pub fn log_deriv_by_blocks(&self, z: Complex64) -> Result<Complex64, OracleError> {
        let blocks = self.schwarz_blocks()?;
        // for p = (1 + σw)/(1 - σw): z p'/p = 2σ z w' / (1 - w²)
        let term = |w: &SchwarzBlock, sigma: f64| {
            let wv = w.eval(z);
            2.0 * sigma * z * w.derivative(z) / (1.0 - wv * wv)
        };
        let tail = 1.0 / (1.0 + z);
        Ok(match self.family {
            Family::F1 => {
                let sigma = -self.contact.sign();
                term(&blocks[0], sigma) + term(&blocks[1], sigma) + tail
            }
            _ => term(&blocks[0], 1.0) + tail,
        })
    }

    fn validate(&self) -> Result<(), OracleError> {
        let fail = |what: &str, z: Complex64, v: Complex64| {
            Err(OracleError::Construction(format!(
                "{what} = {v} at z = {z}; parameters {:?}",
                self.signed
            )))
        };
        for z in polar_grid(DENOMINATOR_RINGS, GRID_ANGLES) {
            for h in std::iter::once(&self.f).chain(self.g.as_ref()) {
                let d = h.denominator().eval_complex(z);
                if !(d.norm() > 1e-300) {
                    return fail("denominator", z, d);
                }
            }
        }
        for z in polar_grid(GRID_RINGS, GRID_ANGLES) {
            if let Some(q) = self.quotient(z) {
                let q = q?;
                if !(q.re > 0.0) {
                    return fail("f/g", z, q);
                }
            }
            let h = self.normalized(z)?;
            if !(h.re > 0.0) {
                return fail("(1+z)h/z", z, h);
            }
        }
        Ok(())
    }
}
