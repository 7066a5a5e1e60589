use std::f64::consts::PI;

use num_complex::Complex64;

use super::{OracleError, SchwarzBlock, GRID_MAX_RADIUS};

/// Bound on `|zp'/p|` over `|z| = r` for `p = 1 + 2b(1-α)z + ⋯` with
/// `Re p > α`:
///
/// ```text
/// 2(1-α) r / (1-r²) · (|b|r² + 2r + |b|) / ((1-2α) r² + 2(1-α)|b| r + 1)
/// ```
pub fn lemma1_bound(b: f64, alpha: f64, r: f64) -> f64 {
    let b = b.abs();
    2.0 * (1.0 - alpha) * r / (1.0 - r * r) * (b * r * r + 2.0 * r + b)
        / ((1.0 - 2.0 * alpha) * r * r + 2.0 * (1.0 - alpha) * b * r + 1.0)
}

/// Largest excess of `|zp'/p|` over [`lemma1_bound`] for
/// `p = (1 + (1-2α)w) / (1 - w)`, `w(z) = z(z+b)/(1+bz)`, on a polar grid
/// of about `n_samples` points with `|z| <= 0.999`. Zero when the bound
/// holds everywhere.
pub fn lemma1_check(b: f64, alpha: f64, n_samples: usize) -> Result<f64, OracleError> {
    if !(alpha.is_finite() && (0.0..1.0).contains(&alpha)) {
        return Err(OracleError::InvalidArgument(format!(
            "alpha = {alpha} is outside [0, 1)"
        )));
    }
    if n_samples == 0 {
        return Err(OracleError::InvalidArgument("n_samples must be positive".into()));
    }
    let w = SchwarzBlock::new(b)?;
    let k = 1.0 - 2.0 * alpha;
    let rings = (n_samples as f64).sqrt().ceil() as usize;
    let angles = n_samples.div_ceil(rings);
    let mut worst: f64 = 0.0;
    for j in 1..=rings {
        let rho = GRID_MAX_RADIUS * j as f64 / rings as f64;
        let bound = lemma1_bound(b, alpha, rho);
        for i in 0..angles {
            let z = Complex64::from_polar(rho, 2.0 * PI * i as f64 / angles as f64);
            let wv = w.eval(z);
            let value = z * w.derivative(z) * (1.0 + k) / ((1.0 + k * wv) * w.one_minus(z));
            worst = worst.max(value.norm() - bound);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert!((lemma1_bound(1.0, 0.0, 0.5) - 4.0 / 3.0).abs() < 1e-15);
        for r in [0.1, 0.5, 0.9] {
            assert!((lemma1_bound(0.0, 0.0, r) - 4.0 * r * r / (1.0 - r.powi(4))).abs() < 1e-12);
            assert!((lemma1_bound(1.0, 0.5, r) - r / (1.0 - r)).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_holds_and_is_attained_on_the_axis() {
        assert!(lemma1_check(0.5, 0.25, 2500).unwrap() <= 1e-9);
        let (b, alpha, r) = (0.5, 0.25, 0.6);
        let w = SchwarzBlock::new(b).unwrap();
        let z = Complex64::new(r, 0.0);
        let k = 1.0 - 2.0 * alpha;
        let wv = w.eval(z);
        let value = z * w.derivative(z) * (k / (1.0 + k * wv) + 1.0 / (1.0 - wv));
        assert!((value.norm() - lemma1_bound(b, alpha, r)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(lemma1_check(1.5, 0.0, 100).is_err());
        assert!(lemma1_check(0.5, 1.0, 100).is_err());
        assert!(lemma1_check(0.5, 0.0, 0).is_err());
    }
}
