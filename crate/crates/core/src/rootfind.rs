//! Scalar root isolation on a bounded interval.
//!
//! The radius problems all reduce to "the smallest root in (0, 1)" of either
//! a real polynomial or a continuous black-box function. [`smallest_root`]
//! scans an equispaced grid for the first sign change, bisects the isolating
//! bracket down to the requested width and then polishes the estimate with a
//! bracketed secant step that never leaves the bracket.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Default number of scan intervals.
pub const DEFAULT_SCAN_N: usize = 4096;

/// Smallest permitted scan resolution.
pub const MIN_SCAN_N: usize = 64;

/// A scan value this close to zero is taken as an exact root.
const EXACT_ZERO: f64 = 1e-14;

const MAX_SECANT_ITER: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("function is not finite at r = {at} (value {value})")]
    NonFinite { at: f64, value: f64 },
    #[error("invalid solver arguments: {0}")]
    InvalidArgument(String),
}

/// Real polynomial with coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed on construction so that the last
/// stored coefficient is the leading one. The zero polynomial is stored as
/// an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        Polynomial::new(vec![0.0, 1.0])
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::constant(1.0), |acc, _| &acc * self)
    }

    /// Number of vanishing low-order coefficients, i.e. the multiplicity of
    /// the root at the origin.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0.0).count()
    }

    /// Divides by `z^k`, dropping the low-order coefficients.
    pub fn shift_down(&self, k: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().skip(k).copied().collect())
    }

    /// Largest absolute difference between coefficients of equal degree.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let m = c.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 => write!(f, "{m}r")?,
                _ => write!(f, "{m}r^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).copied().unwrap_or(0.0) + rhs.coeffs.get(k).copied().unwrap_or(0.0))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::default();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Horner evaluation of an ascending coefficient list.
pub fn eval(p: &Polynomial, r: f64) -> f64 {
    p.eval(r)
}

/// A located root together with its isolating bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: f64,
    /// `|f(value)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Largest `|f|` seen on the scanned part of the grid.
    pub scan_scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootOutcome {
    Root(Root),
    /// No sign change in the open interval.
    NoRoot,
}

impl RootOutcome {
    pub fn root(&self) -> Option<&Root> {
        match self {
            RootOutcome::Root(r) => Some(r),
            RootOutcome::NoRoot => None,
        }
    }
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, RootError> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(RootError::NonFinite { at: x, value: v })
    }
}

/// Smallest root of `f` in the open interval `(lo, hi)`.
///
/// The grid `lo + (hi - lo) k / scan_n`, `k = 0..=scan_n`, is walked from the
/// left and stops at the first sign change, so `f` is never evaluated beyond
/// the first isolating bracket. An interior grid value with `|f| <= 1e-14` is
/// returned directly; zeros at the end points are not roots of the open
/// interval.
pub fn smallest_root<F>(f: F, lo: f64, hi: f64, scan_n: usize, tol: f64) -> Result<RootOutcome, RootError>
where
    F: Fn(f64) -> f64,
{
    if scan_n < MIN_SCAN_N {
        return Err(RootError::InvalidArgument(format!(
            "scan_n = {scan_n} is below the minimum {MIN_SCAN_N}"
        )));
    }
    if !(tol > 0.0) || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(RootError::InvalidArgument(format!(
            "need lo < hi and tol > 0 (lo = {lo}, hi = {hi}, tol = {tol})"
        )));
    }
    let step = (hi - lo) / scan_n as f64;
    let grid = |k: usize| if k == scan_n { hi } else { lo + step * k as f64 };

    let mut x_prev = lo;
    let mut f_prev = checked(&f, lo)?;
    let mut scale = f_prev.abs();
    for k in 1..=scan_n {
        let x = grid(k);
        let fx = checked(&f, x)?;
        scale = scale.max(fx.abs());
        if k < scan_n && fx.abs() <= EXACT_ZERO {
            return Ok(RootOutcome::Root(Root {
                value: x,
                residual: fx.abs(),
                bracket: (x_prev, grid(k + 1)),
                scan_scale: scale,
            }));
        }
        if k == scan_n && fx == 0.0 {
            break;
        }
        if f_prev.signum() != fx.signum() && f_prev != 0.0 {
            let root = refine(&f, x_prev, f_prev, x, fx, tol)?;
            return Ok(RootOutcome::Root(Root {
                scan_scale: scale,
                ..root
            }));
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(RootOutcome::NoRoot)
}

/// Bisection to width `tol`, then bracketed secant polishing.
fn refine<F>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, tol: f64) -> Result<Root, RootError>
where
    F: Fn(f64) -> f64,
{
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = checked(f, m)?;
        if fm == 0.0 {
            return Ok(Root {
                value: m,
                residual: 0.0,
                bracket: (a, b),
                scan_scale: 0.0,
            });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let bracket = (a, b);
    let (mut best_x, mut best_f) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..MAX_SECANT_ITER {
        if best_f == 0.0 {
            break;
        }
        let denom = fb - fa;
        if denom == 0.0 {
            break;
        }
        let x = (b - fb * (b - a) / denom).clamp(a, b);
        if x <= a || x >= b {
            break;
        }
        let fx = checked(f, x)?;
        if fx.abs() < best_f.abs() {
            best_x = x;
            best_f = fx;
        } else {
            break;
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(Root {
        value: best_x,
        residual: best_f.abs(),
        bracket,
        scan_scale: 0.0,
    })
}
