//! The twelve Ma-Minda target regions.
//!
//! Every region is the image `φ(𝔻)` of the unit disk under a univalent map
//! with `φ(0) = 1`. Membership uses a closed-form predicate where one is
//! available and a winding number over the sampled boundary `φ(e^{iθ})`
//! otherwise (Cardioid, Sine, RationalR, RationalRL, Nephroid).
//!
//! [`disk_bound`] gives the radius of a disk about a real center `a >= 1` that
//! is certified to lie inside the region. These are sufficiency thresholds,
//! not exact Euclidean distances to the boundary; they are valid on the
//! center range reported by [`certified_center_limit`].

mod maps;
mod winding;

use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use maps::generating_map;
pub use winding::BoundaryIndex;

/// A point of the complex plane.
pub type ComplexValue = Complex64;

/// The constant `k = √2 + 1` of the RationalR map.
pub const RATIONAL_R_K: f64 = SQRT_2 + 1.0;

/// Default boundary polyline resolution.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 8192;

/// Minimum polyline resolution accepted by [`winding_contains`].
pub const MIN_BOUNDARY_SAMPLES: usize = 256;

/// Points closer than this to the boundary polyline are indeterminate.
pub const EDGE_EPS: f64 = 1e-9;

/// Unbounded regions have their boundary parameter clamped to
/// `[THETA_CLAMP, 2π - THETA_CLAMP]`.
pub const THETA_CLAMP: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("invalid region parameter: {0}")]
    InvalidParameter(String),
    #[error("point {w} lies within {distance:e} of the sampled boundary")]
    BoundaryIndeterminate { w: ComplexValue, distance: f64 },
    #[error("center a = {a} is infeasible for the RationalRL disk bound (needs a <= √2 + 1)")]
    InfeasibleCenter { a: f64 },
    #[error("center a = {0} is outside the domain a >= 1")]
    CenterOutOfDomain(f64),
    #[error("non-finite argument {0}")]
    NonFinite(ComplexValue),
    #[error("unknown region name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "region", rename_all = "kebab-case")]
pub enum RegionSpec {
    /// Starlike of order `alpha`: `Re w > alpha`.
    HalfPlane {
        alpha: f64,
    },
    Lemniscate,
    Parabola,
    Exponential,
    Cardioid,
    Sine,
    Lune,
    RationalR,
    RationalRL,
    /// Strongly starlike of order `gamma`: `|arg w| < gamma π / 2`.
    Sector {
        gamma: f64,
    },
    Nephroid,
    SigmoidSG,
}

impl RegionSpec {
    pub fn half_plane(alpha: f64) -> Result<Self, RegionError> {
        RegionSpec::HalfPlane { alpha }.validated()
    }

    pub fn sector(gamma: f64) -> Result<Self, RegionError> {
        RegionSpec::Sector { gamma }.validated()
    }

    pub fn validated(self) -> Result<Self, RegionError> {
        match self {
            RegionSpec::HalfPlane { alpha } if !(0.0..1.0).contains(&alpha) => Err(RegionError::InvalidParameter(
                format!("half-plane needs 0 <= alpha < 1, got {alpha}"),
            )),
            RegionSpec::Sector { gamma } if !(gamma > 0.0 && gamma <= 1.0) => Err(RegionError::InvalidParameter(
                format!("sector needs 0 < gamma <= 1, got {gamma}"),
            )),
            r => Ok(r),
        }
    }

    /// All twelve variants, with the given parameters for the two
    /// parametrized ones, in the order of the theorem parts.
    pub fn all(alpha: f64, gamma: f64) -> [RegionSpec; 12] {
        [
            RegionSpec::HalfPlane { alpha },
            RegionSpec::Lemniscate,
            RegionSpec::Parabola,
            RegionSpec::Exponential,
            RegionSpec::Cardioid,
            RegionSpec::Sine,
            RegionSpec::Lune,
            RegionSpec::RationalR,
            RegionSpec::RationalRL,
            RegionSpec::Sector { gamma },
            RegionSpec::Nephroid,
            RegionSpec::SigmoidSG,
        ]
    }

    /// 1-based position in the theorem listing.
    pub fn part(&self) -> usize {
        match self {
            RegionSpec::HalfPlane { .. } => 1,
            RegionSpec::Lemniscate => 2,
            RegionSpec::Parabola => 3,
            RegionSpec::Exponential => 4,
            RegionSpec::Cardioid => 5,
            RegionSpec::Sine => 6,
            RegionSpec::Lune => 7,
            RegionSpec::RationalR => 8,
            RegionSpec::RationalRL => 9,
            RegionSpec::Sector { .. } => 10,
            RegionSpec::Nephroid => 11,
            RegionSpec::SigmoidSG => 12,
        }
    }

    /// Command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            RegionSpec::HalfPlane { .. } => "halfplane",
            RegionSpec::Lemniscate => "lemniscate",
            RegionSpec::Parabola => "parabola",
            RegionSpec::Exponential => "exponential",
            RegionSpec::Cardioid => "cardioid",
            RegionSpec::Sine => "sine",
            RegionSpec::Lune => "lune",
            RegionSpec::RationalR => "rational-r",
            RegionSpec::RationalRL => "rational-rl",
            RegionSpec::Sector { .. } => "sector",
            RegionSpec::Nephroid => "nephroid",
            RegionSpec::SigmoidSG => "sigmoid",
        }
    }

    /// Builds a region from its command-line name.
    pub fn from_name(name: &str, alpha: f64, gamma: f64) -> Result<Self, RegionError> {
        let r = match name {
            "halfplane" => RegionSpec::HalfPlane { alpha },
            "lemniscate" => RegionSpec::Lemniscate,
            "parabola" => RegionSpec::Parabola,
            "exponential" => RegionSpec::Exponential,
            "cardioid" => RegionSpec::Cardioid,
            "sine" => RegionSpec::Sine,
            "lune" => RegionSpec::Lune,
            "rational-r" => RegionSpec::RationalR,
            "rational-rl" => RegionSpec::RationalRL,
            "sector" => RegionSpec::Sector { gamma },
            "nephroid" => RegionSpec::Nephroid,
            "sigmoid" => RegionSpec::SigmoidSG,
            other => return Err(RegionError::UnknownName(other.to_string())),
        };
        r.validated()
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            RegionSpec::HalfPlane { alpha } => Some(*alpha),
            _ => None,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            RegionSpec::Sector { gamma } => Some(*gamma),
            _ => None,
        }
    }

    /// Regions whose boundary runs off to infinity.
    pub fn is_unbounded(&self) -> bool {
        matches!(
            self,
            RegionSpec::HalfPlane { .. } | RegionSpec::Parabola | RegionSpec::Sector { .. }
        )
    }

    /// Whether [`contains`] uses a closed-form predicate.
    pub fn has_closed_form(&self) -> bool {
        !matches!(
            self,
            RegionSpec::Cardioid
                | RegionSpec::Sine
                | RegionSpec::Nephroid
                | RegionSpec::RationalR
                | RegionSpec::RationalRL
        )
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::HalfPlane { alpha } => write!(f, "halfplane(alpha={alpha})"),
            RegionSpec::Sector { gamma } => write!(f, "sector(gamma={gamma})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for RegionSpec {
    type Err = RegionError;

    /// Parses a bare name; the half-plane gets `alpha = 0` and the sector
    /// `gamma = 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionSpec::from_name(s, 0.0, 1.0)
    }
}

/// Open-region membership.
///
/// For the winding-number regions a point within [`EDGE_EPS`] of the sampled
/// boundary is reported as outside.
pub fn contains(region: &RegionSpec, w: ComplexValue) -> bool {
    membership(region, w).unwrap_or(false)
}

/// Membership that reports points too close to a sampled boundary as
/// [`RegionError::BoundaryIndeterminate`] instead of guessing.
pub fn membership(region: &RegionSpec, w: ComplexValue) -> Result<bool, RegionError> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(RegionError::NonFinite(w));
    }
    match closed_form_contains(region, w) {
        Some(inside) => Ok(inside),
        None => default_index(region).classify(w),
    }
}

/// Closed-form predicate, or `None` for the winding-number regions.
///
/// The lemniscate and lune curves are symmetric under `w -> -w`; only the
/// lobe in the right half-plane belongs to the region.
pub fn closed_form_contains(region: &RegionSpec, w: ComplexValue) -> Option<bool> {
    let one = Complex64::new(1.0, 0.0);
    let inside = match *region {
        RegionSpec::HalfPlane { alpha } => w.re > alpha,
        RegionSpec::Lemniscate => w.re > 0.0 && (w * w - one).norm() < 1.0,
        RegionSpec::Parabola => (w - one).norm() < w.re,
        RegionSpec::Lune => w.re > 0.0 && (w * w - one).norm() < 2.0 * w.norm(),
        RegionSpec::Exponential => w.re > 0.0 && w.ln().norm() < 1.0,
        RegionSpec::SigmoidSG => {
            if w.re <= 0.0 || w.re >= 2.0 {
                false
            } else {
                (w / (Complex64::new(2.0, 0.0) - w)).ln().norm() < 1.0
            }
        }
        RegionSpec::Sector { gamma } => w != Complex64::new(0.0, 0.0) && w.arg().abs() < gamma * FRAC_PI_2,
        _ => return None,
    };
    Some(inside)
}

/// `φ(e^{iθ})` for the region's generating map.
///
/// For the unbounded regions θ is clamped to `[1e-4, 2π - 1e-4]`, which keeps
/// away from the boundary point at infinity (θ = 0). The half-plane
/// boundary is the line `α + i (1 - α) cot(θ/2)`, the image of the unit
/// circle under `(1 + (1 - 2α) z) / (1 - z)`.
pub fn boundary(region: &RegionSpec, theta: f64) -> ComplexValue {
    let t = theta.rem_euclid(2.0 * PI);
    let t = if region.is_unbounded() {
        t.clamp(THETA_CLAMP, 2.0 * PI - THETA_CLAMP)
    } else {
        t
    };
    generating_map(region, Complex64::from_polar(1.0, t))
}

/// Winding-number membership over an `n_samples` polyline of the boundary.
pub fn winding_contains(region: &RegionSpec, w: ComplexValue, n_samples: usize) -> Result<bool, RegionError> {
    if n_samples < MIN_BOUNDARY_SAMPLES {
        return Err(RegionError::InvalidParameter(format!(
            "n_samples = {n_samples} is below {MIN_BOUNDARY_SAMPLES}"
        )));
    }
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(RegionError::NonFinite(w));
    }
    if n_samples == DEFAULT_BOUNDARY_SAMPLES && !region.has_closed_form() {
        return default_index(region).classify(w);
    }
    BoundaryIndex::new(region, n_samples)?.classify(w)
}

/// Shared default-resolution index for the parameter-free winding regions.
fn default_index(region: &RegionSpec) -> &'static BoundaryIndex {
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
        other => panic!("{other} has a closed-form predicate"),
    };
    CACHE[slot]
        .get_or_init(|| BoundaryIndex::new(region, DEFAULT_BOUNDARY_SAMPLES).expect("default resolution is valid"))
}

/// Radius of the disk about the real center `a` certified to lie in the
/// region.
///
/// A nonpositive value means no disk of positive radius about `a` is
/// certified. The formulas are the containment thresholds from the
/// literature on each class, e.g. `a - 1/2` for the parabola and
/// `5/3 - a` for the nephroid.
pub fn disk_bound(region: &RegionSpec, a: f64) -> Result<f64, RegionError> {
    if !a.is_finite() {
        return Err(RegionError::NonFinite(Complex64::new(a, 0.0)));
    }
    if a < 1.0 {
        return Err(RegionError::CenterOutOfDomain(a));
    }
    let sin1 = 1f64.sin();
    Ok(match *region {
        RegionSpec::HalfPlane { alpha } => a - alpha,
        RegionSpec::Lemniscate => SQRT_2 - a,
        RegionSpec::Parabola => a - 0.5,
        RegionSpec::Exponential => a - 1.0 / E,
        RegionSpec::Cardioid => a - 1.0 / 3.0,
        RegionSpec::Sine => 1.0 + sin1 - a,
        RegionSpec::Lune => a - SQRT_2 + 1.0,
        RegionSpec::RationalR => a + 2.0 - 2.0 * SQRT_2,
        RegionSpec::RationalRL => {
            let t = 1.0 - (SQRT_2 - a).powi(2);
            if t < 0.0 {
                return Err(RegionError::InfeasibleCenter { a });
            }
            (t.sqrt() - t).max(0.0).sqrt()
        }
        RegionSpec::Sector { gamma } => a * (PI * gamma / 2.0).sin(),
        RegionSpec::Nephroid => 5.0 / 3.0 - a,
        RegionSpec::SigmoidSG => 2.0 * E / (1.0 + E) - a,
    })
}

/// Upper end of the center range `[1, a_max]` on which [`disk_bound`] is a
/// valid containment radius. Infinite for the half-plane and the sector.
pub fn certified_center_limit(region: &RegionSpec) -> f64 {
    match region {
        RegionSpec::HalfPlane { .. } | RegionSpec::Sector { .. } => f64::INFINITY,
        RegionSpec::Lemniscate | RegionSpec::Lune | RegionSpec::RationalR | RegionSpec::RationalRL => SQRT_2,
        RegionSpec::Parabola => 1.5,
        RegionSpec::Exponential => (E + 1.0 / E) / 2.0,
        RegionSpec::Cardioid | RegionSpec::Nephroid => 5.0 / 3.0,
        RegionSpec::Sine => 1.0 + 1f64.sin(),
        RegionSpec::SigmoidSG => 2.0 * E / (1.0 + E),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    #[test]
    fn membership_examples() {
        assert!(contains(&RegionSpec::Lemniscate, c(1.0, 0.0)));
        assert!(!contains(&RegionSpec::Lemniscate, c(1.5, 0.0)));
        assert!(!contains(&RegionSpec::Lemniscate, c(-1.0, 0.0)));
        assert!(!contains(&RegionSpec::Lune, c(-1.0, 0.0)));
        assert!(contains(&RegionSpec::Parabola, c(2.0, 0.0)));
        assert!(contains(&RegionSpec::Lune, c(1.0, 0.0)));
    }

    #[test]
    fn center_is_inside_every_region() {
        for region in RegionSpec::all(0.5, 0.5) {
            assert!(contains(&region, c(1.0, 0.0)), "{region}");
        }
    }

    #[test]
    fn branch_obstructions_are_outside() {
        assert!(!contains(&RegionSpec::Exponential, c(-1.0, 0.0)));
        assert!(!contains(&RegionSpec::Exponential, c(0.0, 0.0)));
        assert!(!contains(&RegionSpec::SigmoidSG, c(2.0, 0.0)));
        assert!(!contains(&RegionSpec::SigmoidSG, c(-0.5, 0.0)));
        assert!(!contains(&RegionSpec::Sector { gamma: 0.5 }, c(0.0, 0.0)));
        assert!(!contains(&RegionSpec::Sector { gamma: 1.0 }, c(-2.0, 0.0)));
        assert!(!contains(&RegionSpec::Lemniscate, c(f64::NAN, 0.0)));
    }

    #[test]
    fn boundary_examples() {
        let s = boundary(&RegionSpec::Sine, 0.0);
        assert!((s - c(1.0 + 1f64.sin(), 0.0)).norm() < 1e-15);
        let card0 = boundary(&RegionSpec::Cardioid, 0.0);
        assert!((card0 - c(3.0, 0.0)).norm() < 1e-15);
        let card_pi = boundary(&RegionSpec::Cardioid, PI);
        assert!((card_pi - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn half_plane_boundary_is_the_vertical_line() {
        for k in 1..16 {
            let w = boundary(&RegionSpec::HalfPlane { alpha: 0.25 }, 0.4 * k as f64);
            assert!((w.re - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn winding_examples() {
        assert!(winding_contains(&RegionSpec::Nephroid, c(1.0, 0.0), 4096).unwrap());
        assert!(!winding_contains(&RegionSpec::Nephroid, c(3.0, 0.0), 4096).unwrap());
        let w = c(1.2, 0.0);
        assert_eq!(
            winding_contains(&RegionSpec::Lemniscate, w, 4096).unwrap(),
            contains(&RegionSpec::Lemniscate, w)
        );
        assert!(contains(&RegionSpec::Lemniscate, w));
    }

    #[test]
    fn winding_rejects_coarse_polylines() {
        assert!(matches!(
            winding_contains(&RegionSpec::Cardioid, c(1.0, 0.0), 100),
            Err(RegionError::InvalidParameter(_))
        ));
    }

    #[test]
    fn point_on_the_polyline_is_indeterminate() {
        // θ = π is a polyline vertex for any even resolution
        let w = boundary(&RegionSpec::Cardioid, PI);
        assert!(matches!(
            winding_contains(&RegionSpec::Cardioid, w, 1024),
            Err(RegionError::BoundaryIndeterminate { .. })
        ));
    }

    #[test]
    fn disk_bound_examples() {
        assert_eq!(disk_bound(&RegionSpec::Parabola, 1.0).unwrap(), 0.5);
        assert!((disk_bound(&RegionSpec::Sine, 1.0).unwrap() - 0.841471).abs() < 1e-6);
        assert_eq!(disk_bound(&RegionSpec::HalfPlane { alpha: 0.25 }, 1.5).unwrap(), 1.25);
        // √(√(1-(√2-1)²) - (1-(√2-1)²)) with 1-(√2-1)² = 2√2-2
        let t = 2.0 * SQRT_2 - 2.0;
        let expected = (t.sqrt() - t).sqrt();
        let got = disk_bound(&RegionSpec::RationalRL, 1.0).unwrap();
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.285925).abs() < 1e-6);
    }

    #[test]
    fn rational_rl_infeasible_center() {
        assert!(disk_bound(&RegionSpec::RationalRL, SQRT_2 + 1.0).is_ok());
        assert!(matches!(
            disk_bound(&RegionSpec::RationalRL, SQRT_2 + 1.01),
            Err(RegionError::InfeasibleCenter { .. })
        ));
        assert!(matches!(
            disk_bound(&RegionSpec::Lune, 0.5),
            Err(RegionError::CenterOutOfDomain(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        assert!(RegionSpec::half_plane(1.0).is_err());
        assert!(RegionSpec::half_plane(-0.1).is_err());
        assert!(RegionSpec::half_plane(0.0).is_ok());
        assert!(RegionSpec::sector(0.0).is_err());
        assert!(RegionSpec::sector(1.0).is_ok());
        assert!(RegionSpec::from_name("kidney", 0.0, 1.0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for region in RegionSpec::all(0.3, 0.7) {
            let back = RegionSpec::from_name(region.name(), 0.3, 0.7).unwrap();
            assert_eq!(back, region);
        }
    }

    #[test]
    fn half_plane_bound_is_tight() {
        for &a in &[1.0, 1.3, 2.0] {
            let region = RegionSpec::HalfPlane { alpha: 0.4 };
            let rho = disk_bound(&region, a).unwrap();
            assert!(!contains(&region, c(a - rho - 1e-6, 0.0)));
            assert!(contains(&region, c(a - rho + 1e-6, 0.0)));
        }
    }
}
