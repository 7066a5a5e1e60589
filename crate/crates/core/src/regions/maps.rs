use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{RegionSpec, RATIONAL_R_K};

/// The generating map `φ` of each region, with `φ(0) = 1` and `φ'(0) > 0`.
///
/// Principal branches are used throughout; on the closed unit disk none of
/// the square roots or logarithms below meets its branch cut.
pub fn generating_map(region: &RegionSpec, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match *region {
        RegionSpec::HalfPlane { alpha } => (one + (1.0 - 2.0 * alpha) * z) / (one - z),
        RegionSpec::Lemniscate => (one + z).sqrt(),
        RegionSpec::Parabola => {
            let s = z.sqrt();
            let l = ((one - s) / (one + s)).ln();
            one + 2.0 / (PI * PI) * l * l
        }
        RegionSpec::Exponential => z.exp(),
        RegionSpec::Cardioid => one + 4.0 / 3.0 * z + 2.0 / 3.0 * z * z,
        RegionSpec::Sine => one + z.sin(),
        RegionSpec::Lune => z + (one + z * z).sqrt(),
        RegionSpec::RationalR => {
            let k = RATIONAL_R_K;
            one + z * (k + z) / (k * (k - z))
        }
        RegionSpec::RationalRL => {
            let lam = 2.0 * (SQRT_2 - 1.0);
            SQRT_2 - (SQRT_2 - 1.0) * ((one - z) / (one + lam * z)).sqrt()
        }
        RegionSpec::Sector { gamma } => {
            let q = (one + z) / (one - z);
            if q.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (gamma * q.ln()).exp()
            }
        }
        RegionSpec::Nephroid => one + z - z * z * z / 3.0,
        RegionSpec::SigmoidSG => 2.0 / (one + (-z).exp()),
    }
}
