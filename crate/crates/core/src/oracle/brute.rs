use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{extremals, OracleError, RationalFunction};
use crate::envelope::ClassParams;
use crate::regions::{membership, BoundaryIndex, RegionError, RegionSpec};

/// Largest radius probed.
const R_CEILING: f64 = 1.0 - 1e-6;
/// Polyline resolution used to settle points near a sampled boundary.
const FINE_SAMPLES: usize = 1 << 16;
const FINE_EPS: f64 = 2e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteOptions {
    pub r_tol: f64,
    pub n_theta: usize,
    pub n_rad: usize,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            r_tol: 1e-4,
            n_theta: 1440,
            n_rad: 48,
        }
    }
}

impl BruteOptions {
    fn validate(&self) -> Result<(), OracleError> {
        if self.n_theta < 720 || self.n_rad < 32 || !(self.r_tol > 0.0 && self.r_tol <= 1e-3) {
            return Err(OracleError::InvalidArgument(format!(
                "brute force needs n_theta >= 720, n_rad >= 32 and 0 < r_tol <= 1e-3, got {self:?}"
            )));
        }
        Ok(())
    }
}

fn fine_index(region: &RegionSpec) -> Result<&'static BoundaryIndex, OracleError> {
    static CACHE: [OnceLock<BoundaryIndex>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let slot = match region {
        RegionSpec::Cardioid => 0,
        RegionSpec::Sine => 1,
        RegionSpec::Nephroid => 2,
        RegionSpec::RationalR => 3,
        RegionSpec::RationalRL => 4,
        other => return Err(OracleError::InvalidArgument(format!("{other} needs no boundary index"))),
    };
    Ok(CACHE[slot].get_or_init(|| {
        BoundaryIndex::with_chord_tol(region, FINE_SAMPLES, FINE_EPS / 4.0).expect("fine resolution is valid")
    }))
}

fn member(region: &RegionSpec, w: Complex64, rho: f64) -> Result<bool, OracleError> {
    match membership(region, w) {
        Ok(inside) => Ok(inside),
        Err(RegionError::NonFinite(_)) => Ok(false),
        Err(RegionError::BoundaryIndeterminate { .. }) => match fine_index(region)?.classify_with(w, FINE_EPS) {
            Ok(inside) => Ok(inside),
            Err(RegionError::BoundaryIndeterminate { .. }) => Err(OracleError::Indeterminate { w, rho }),
            Err(e) => Err(e.into()),
        },
        Err(e) => Err(e.into()),
    }
}

/// Whether `zf'/f` maps every sample of `|z| <= r` into the region.
/// Circles are checked from the outside in, stopping at the first miss.
fn passes(f: &RationalFunction, region: &RegionSpec, r: f64, opts: &BruteOptions) -> Result<bool, OracleError> {
    for k in (1..=opts.n_rad).rev() {
        let rho = r * k as f64 / opts.n_rad as f64;
        for j in 0..opts.n_theta {
            let z = Complex64::from_polar(rho, 2.0 * PI * j as f64 / opts.n_theta as f64);
            let w = match f.log_deriv(z) {
                Ok(w) => w,
                Err(OracleError::Pole(_) | OracleError::Zero(_)) => return Ok(false),
                Err(e) => return Err(e),
            };
            if !member(region, w, rho)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest sampled radius on which `zf'/f` stays in the region, found by
/// bisection to width `r_tol` and returned as the bracket midpoint.
///
/// Returns `1 - 1e-6` when the whole probed disk passes.
pub fn brute_radius(f: &RationalFunction, region: &RegionSpec, opts: &BruteOptions) -> Result<f64, OracleError> {
    opts.validate()?;
    let region = region.validated()?;
    if passes(f, &region, R_CEILING, opts)? {
        return Ok(R_CEILING);
    }
    let (mut lo, mut hi) = (0.0, R_CEILING);
    while hi - lo > opts.r_tol {
        let mid = 0.5 * (lo + hi);
        if passes(f, &region, mid, opts)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest brute-force radius over the family's extremals. Each extremal
/// belongs to the class, so this is an upper bound for the class radius.
pub fn oracle_radius(class: &ClassParams, region: &RegionSpec, opts: &BruteOptions) -> Result<f64, OracleError> {
    let mut best = f64::INFINITY;
    for ext in extremals(class)? {
        best = best.min(brute_radius(&ext.f, region, opts)?);
    }
    Ok(best)
}
