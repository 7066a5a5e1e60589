use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use super::{build_extremal, Contact, OracleError};
use crate::envelope::{ClassParams, Family};
use crate::regions::RegionSpec;

/// Boundary-contact functional of a region: `functional(w) = target`
/// exactly when `w` lies on the boundary near the contact point.
#[derive(Debug, Clone, Copy)]
pub struct ContactSpec {
    pub point: Contact,
    pub target: f64,
    pub functional: fn(Complex64) -> f64,
    pub description: &'static str,
}

fn modulus(w: Complex64) -> f64 {
    w.norm()
}

fn contact(point: Contact, target: f64, functional: fn(Complex64) -> f64, description: &'static str) -> ContactSpec {
    ContactSpec {
        point,
        target,
        functional,
        description,
    }
}

/// The contact functional used to certify sharpness, or `None` for the
/// rational RL region and the sector, which have no contact computation.
pub fn contact_spec(region: &RegionSpec) -> Option<ContactSpec> {
    use Contact::{Minus, Plus};
    Some(match *region {
        RegionSpec::HalfPlane { alpha } => contact(Plus, alpha, |w| w.re, "Re w"),
        RegionSpec::Lemniscate => contact(Minus, 1.0, |w| (w * w - 1.0).norm(), "|w^2 - 1|"),
        RegionSpec::Parabola => contact(Plus, 0.0, |w| w.re - (w - 1.0).norm(), "Re w - |w - 1|"),
        RegionSpec::Exponential => contact(Plus, 1.0, |w| w.ln().norm(), "|log w|"),
        RegionSpec::Cardioid => contact(Plus, 1.0 / 3.0, modulus, "|w|"),
        RegionSpec::Sine => contact(Minus, 1.0 + 1f64.sin(), modulus, "|w|"),
        RegionSpec::Lune => contact(Plus, 0.0, |w| (w * w - 1.0).norm() - 2.0 * w.norm(), "|w^2 - 1| - 2|w|"),
        RegionSpec::RationalR => contact(Plus, 2.0 * SQRT_2 - 2.0, modulus, "|w|"),
        RegionSpec::Nephroid => contact(Minus, 5.0 / 3.0, modulus, "|w|"),
        RegionSpec::SigmoidSG => contact(Minus, 1.0, |w| (w / (2.0 - w)).ln().norm(), "|log(w / (2 - w))|"),
        RegionSpec::RationalRL | RegionSpec::Sector { .. } => return None,
    })
}

/// Whether the theorem asserts that the radius is attained: every F1
/// region with a contact computation, and the lemniscate for F3.
pub fn sharp_claimed(family: Family, region: &RegionSpec) -> bool {
    match family {
        Family::F1 => contact_spec(region).is_some(),
        Family::F2 => false,
        Family::F3 => matches!(region, RegionSpec::Lemniscate),
    }
}

/// Whether `zf'/f` of the extremal reaches the growth-envelope endpoints
/// `a ± L` on the real axis. This needs the signed parameters to be
/// nonpositive (`5b-3c <= 0` and `3c+1 <= 0` for F1, `1+3b <= 0` for F3);
/// otherwise the extremal stays strictly inside the envelope disk.
pub fn extremal_attains_envelope(class: &ClassParams) -> bool {
    const SLACK: f64 = 1e-12;
    match class.family() {
        Family::F1 => match (class.b(), class.c()) {
            (Some(b), Some(c)) => 5.0 * b - 3.0 * c <= SLACK && 3.0 * c + 1.0 <= SLACK,
            _ => true,
        },
        Family::F2 => false,
        Family::F3 => class.b().map(|b| 1.0 + 3.0 * b <= SLACK).unwrap_or(true),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpnessReport {
    pub family: Family,
    pub region: &'static str,
    pub functional: &'static str,
    /// Signed contact point `±r*`.
    pub z: f64,
    pub w: (f64, f64),
    pub value: f64,
    pub target: f64,
    pub deviation: f64,
    pub claimed: bool,
    pub attains_envelope: bool,
}

/// Evaluates the region's contact functional on `zf'/f` of the matching
/// extremal at `z = ±r_star`.
pub fn verify_sharpness(class: &ClassParams, region: &RegionSpec, r_star: f64) -> Result<SharpnessReport, OracleError> {
    let family = class.family();
    let region = region.validated()?;
    if family == Family::F2 {
        return Err(OracleError::UnsupportedExtremal(family));
    }
    if !family.supports(&region) {
        return Err(OracleError::NoSharpnessClaim {
            family,
            region: region.name(),
        });
    }
    let spec = contact_spec(&region).ok_or(OracleError::NoSharpnessClaim {
        family,
        region: region.name(),
    })?;
    if !(r_star > 0.0 && r_star < 1.0) {
        return Err(OracleError::InvalidArgument(format!(
            "r_star = {r_star} is outside (0, 1)"
        )));
    }
    let ext = build_extremal(class, spec.point)?;
    let z = spec.point.sign() * r_star;
    let w = ext.f.log_deriv(Complex64::new(z, 0.0))?;
    let value = (spec.functional)(w);
    Ok(SharpnessReport {
        family,
        region: region.name(),
        functional: spec.description,
        z,
        w: (w.re, w.im),
        value,
        target: spec.target,
        deviation: (value - spec.target).abs(),
        claimed: sharp_claimed(family, &region),
        attains_envelope: extremal_attains_envelope(class),
    })
}
