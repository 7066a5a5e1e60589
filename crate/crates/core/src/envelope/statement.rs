//! Radius equations as displayed in the theorems, transcribed coefficient
//! by coefficient.
//!
//! Each polynomial is a constant multiple of `N - (1 - r²) B(a) Q`, where
//! `L = N/((1 - r²) Q)` and `B` is the region's disk bound. For two
//! regions the theorem statement and its proof print different
//! coefficients; both versions are kept and selected by [`EquationSource`].

use std::f64::consts::{E, PI, SQRT_2};
use std::fmt;

use serde::Serialize;

use super::{envelope_quotient, ClassParams, EnvelopeError, Family};
use crate::regions::RegionSpec;
use crate::rootfind::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationSource {
    /// The equation as printed in the theorem.
    Statement,
    /// The equation as derived in the proof.
    Proof,
}

impl fmt::Display for EquationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationSource::Statement => "statement",
            EquationSource::Proof => "proof",
        })
    }
}

/// `N(r)² - Q(r)² T(1 - r²)` with
/// `T(u) = u √(u² - (√2u - 1)²) - u² + (√2u - 1)²`.
///
/// `T` is only real while `a = 1/u ≤ √2 + 1`; beyond that the equation
/// evaluates to `-∞`, matching the margin.
#[derive(Debug, Clone, PartialEq)]
pub struct RadicalEquation {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RadicalEquation {
    pub fn eval(&self, r: f64) -> f64 {
        let u = 1.0 - r * r;
        let s = SQRT_2 * u - 1.0;
        let disc = u * u - s * s;
        if disc < 0.0 {
            return f64::NEG_INFINITY;
        }
        let t = u * disc.sqrt() - u * u + s * s;
        let n = self.numerator.eval(r);
        let q = self.denominator.eval(r);
        n * n - q * q * t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementEquation {
    Polynomial(Polynomial),
    Radical(RadicalEquation),
}

impl StatementEquation {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            StatementEquation::Polynomial(p) => p.eval(r),
            StatementEquation::Radical(e) => e.eval(r),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            StatementEquation::Polynomial(p) => Some(p),
            StatementEquation::Radical(_) => None,
        }
    }
}

/// A coefficient printed differently in the theorem and in its proof.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discrepancy {
    pub family: Family,
    pub region: &'static str,
    pub statement: &'static str,
    pub proof: &'static str,
    /// Which version agrees with the growth envelope.
    pub consistent: EquationSource,
}

const DISCREPANCIES: [Discrepancy; 2] = [
    Discrepancy {
        family: Family::F1,
        region: "rational-r",
        statement: "r^4 coefficient 9-2√2+S+(4+2√2)c'd",
        proof: "r^4 coefficient 9-2√2+S+(4-2√2)c'd",
        consistent: EquationSource::Proof,
    },
    Discrepancy {
        family: Family::F2,
        region: "lemniscate",
        statement: "r^5 coefficient 1+√2",
        proof: "r^5 coefficient (1+√2)d'",
        consistent: EquationSource::Proof,
    },
];

pub fn discrepancies() -> &'static [Discrepancy] {
    &DISCREPANCIES
}

pub fn discrepancy(family: Family, region: &RegionSpec) -> Option<Discrepancy> {
    DISCREPANCIES
        .iter()
        .copied()
        .find(|d| d.family == family && d.region == region.name())
}

/// The equation printed in the theorem statement.
pub fn statement_equation(class: &ClassParams, region: &RegionSpec) -> Result<StatementEquation, EnvelopeError> {
    equation(class, region, EquationSource::Statement)
}

pub fn equation(
    class: &ClassParams,
    region: &RegionSpec,
    source: EquationSource,
) -> Result<StatementEquation, EnvelopeError> {
    let region = region.validated()?;
    let unsupported = || EnvelopeError::UnsupportedPair {
        family: class.family(),
        region: region.name(),
    };
    if let RegionSpec::RationalRL = region {
        if class.family() == Family::F3 {
            return Err(unsupported());
        }
        let (numerator, denominator) = envelope_quotient(class);
        return Ok(StatementEquation::Radical(RadicalEquation { numerator, denominator }));
    }
    let coeffs = match class.family() {
        Family::F1 => f1_coefficients(class.cp(), class.d(), &region, source),
        Family::F2 => f2_coefficients(class.cp(), class.dp(), &region, source),
        Family::F3 => f3_coefficients(class.bp(), &region).ok_or_else(unsupported)?,
    };
    Ok(StatementEquation::Polynomial(Polynomial::new(coeffs)))
}

fn sector_sine(gamma: f64) -> f64 {
    (PI * gamma / 2.0).sin()
}

fn f1_coefficients(cp: f64, d: f64, region: &RegionSpec, source: EquationSource) -> Vec<f64> {
    let (s, p) = (cp + d, cp * d);
    let r2 = SQRT_2;
    let sn = 1f64.sin();
    match *region {
        RegionSpec::HalfPlane { alpha: a } => vec![
            a - 1.0,
            1.0 + a * s,
            6.0 + a + s + (1.0 + a) * p,
            2.0 + 5.0 * s + p,
            7.0 - a + s + (2.0 - a) * p,
            1.0 + (1.0 - a) * s,
            -a,
        ],
        RegionSpec::Lemniscate => vec![
            1.0 - r2,
            1.0 + r2 * (r2 - 1.0) * s,
            10.0 - r2 + s + (3.0 - r2) * p,
            2.0 + 7.0 * s + p,
            9.0 + r2 + s + r2 * (r2 + 1.0) * p,
            1.0 + (1.0 + r2) * s,
            r2,
        ],
        RegionSpec::Parabola => vec![
            -1.0,
            2.0 + s,
            13.0 + 2.0 * s + 3.0 * p,
            4.0 + 10.0 * s + 2.0 * p,
            13.0 + 2.0 * s + 3.0 * p,
            2.0 + s,
            -1.0,
        ],
        RegionSpec::Exponential => vec![
            1.0 - E,
            E + s,
            6.0 * E + 1.0 + E * s + (E + 1.0) * p,
            2.0 * E + 5.0 * E * s + E * p,
            7.0 * E - 1.0 + E * s + (2.0 * E - 1.0) * p,
            E + (E - 1.0) * s,
            -1.0,
        ],
        RegionSpec::Cardioid => vec![
            -2.0,
            3.0 + s,
            19.0 + 3.0 * s + 4.0 * p,
            6.0 + 15.0 * s + 3.0 * p,
            20.0 + 3.0 * s + 5.0 * p,
            3.0 + 2.0 * s,
            -1.0,
        ],
        RegionSpec::Sine => vec![
            -sn,
            1.0 + (1.0 - sn) * s,
            9.0 - sn + s + (2.0 - sn) * p,
            2.0 + 7.0 * s + p,
            10.0 + sn + s + (3.0 + sn) * p,
            1.0 + (2.0 + sn) * s,
            1.0 + sn,
        ],
        RegionSpec::Lune => vec![
            r2 - 2.0,
            1.0 + (r2 - 1.0) * s,
            5.0 + r2 + s + r2 * p,
            2.0 + 5.0 * s + p,
            8.0 - r2 + s + (3.0 - r2) * p,
            1.0 + r2 * (r2 - 1.0) * s,
            1.0 - r2,
        ],
        RegionSpec::RationalR => {
            let r4 = match source {
                EquationSource::Statement => 4.0 + 2.0 * r2,
                EquationSource::Proof => 4.0 - 2.0 * r2,
            };
            vec![
                2.0 * r2 - 3.0,
                1.0 + (2.0 * r2 - 2.0) * s,
                4.0 + 2.0 * r2 + s + (2.0 * r2 - 1.0) * p,
                2.0 + 5.0 * s + p,
                9.0 - 2.0 * r2 + s + r4 * p,
                1.0 + (3.0 - 2.0 * r2) * s,
                2.0 - 2.0 * r2,
            ]
        }
        RegionSpec::Sector { gamma } => {
            let sg = sector_sine(gamma);
            vec![
                -sg,
                1.0 + (1.0 - sg) * s,
                8.0 - 2.0 * sg + s + (2.0 - sg) * p,
                2.0 + (6.0 - sg) * s + p,
                8.0 - sg + s + 2.0 * p,
                1.0 + s,
            ]
        }
        RegionSpec::Nephroid => vec![
            -2.0,
            3.0 + s,
            25.0 + 3.0 * s + 4.0 * p,
            6.0 + 21.0 * s + 3.0 * p,
            32.0 + 3.0 * s + 11.0 * p,
            3.0 + 8.0 * s,
            5.0,
        ],
        RegionSpec::SigmoidSG => vec![
            1.0 - E,
            1.0 + E + 2.0 * s,
            2.0 * (5.0 + 4.0 * E) + (1.0 + E) * s + (3.0 + E) * p,
            (1.0 + E) * (2.0 + p) + 7.0 * (1.0 + E) * s,
            9.0 + 11.0 * E + (1.0 + E) * s + 2.0 * (1.0 + 2.0 * E) * p,
            1.0 + E + (1.0 + 3.0 * E) * s,
            2.0 * E,
        ],
        RegionSpec::RationalRL => unreachable!("handled by the radical form"),
    }
}

fn f2_coefficients(cp: f64, dp: f64, region: &RegionSpec, source: EquationSource) -> Vec<f64> {
    let (s, p) = (cp + dp, cp * dp);
    let r2 = SQRT_2;
    let sn = 1f64.sin();
    match *region {
        RegionSpec::HalfPlane { alpha: a } => vec![
            a - 1.0,
            1.0 + a * s,
            5.0 + s + (1.0 + a) * p,
            1.0 + (3.0 - a) * cp + 5.0 * dp + p,
            (2.0 - a) * (1.0 + p) + dp,
            (1.0 - a) * dp,
        ],
        RegionSpec::Lemniscate => {
            let r5 = match source {
                EquationSource::Statement => 1.0 + r2,
                EquationSource::Proof => (1.0 + r2) * dp,
            };
            vec![
                1.0 - r2,
                1.0 + r2 * (r2 - 1.0) * s,
                7.0 + s + (3.0 - r2) * p,
                1.0 + (3.0 + r2) * cp + 7.0 * dp + p,
                r2 * (1.0 + r2) * (1.0 + p) + dp,
                r5,
            ]
        }
        RegionSpec::Parabola => vec![
            -1.0,
            2.0 + s,
            10.0 + 2.0 * s + 3.0 * p,
            2.0 + 5.0 * cp + 10.0 * dp + 2.0 * p,
            3.0 + 2.0 * dp + 3.0 * p,
            dp,
        ],
        RegionSpec::Exponential => vec![
            1.0 - E,
            E + s,
            5.0 * E + E * s + (E + 1.0) * p,
            E + (3.0 * E - 1.0) * cp + 5.0 * E * dp + E * p,
            2.0 * E - 1.0 + E * dp + (2.0 * E - 1.0) * p,
            (E - 1.0) * dp,
        ],
        RegionSpec::Cardioid => vec![
            -2.0,
            3.0 + s,
            15.0 + 3.0 * s + 4.0 * p,
            3.0 + 8.0 * cp + 15.0 * dp + 3.0 * p,
            5.0 + 3.0 * dp + 5.0 * p,
            2.0 * dp,
        ],
        RegionSpec::Sine => vec![
            -sn,
            1.0 + (1.0 - sn) * s,
            7.0 + s + (2.0 - sn) * p,
            1.0 + (4.0 + sn) * cp + 7.0 * dp + p,
            (3.0 + sn) * (1.0 + p) + dp,
            (2.0 + sn) * dp,
        ],
        RegionSpec::Lune => vec![
            r2 * (1.0 - r2),
            1.0 + (r2 - 1.0) * s,
            5.0 + s + r2 * p,
            1.0 + (4.0 - r2) * cp + 5.0 * dp + p,
            (3.0 - r2) * (1.0 + p) + dp,
            r2 * (r2 - 1.0) * dp,
        ],
        RegionSpec::RationalR => vec![
            2.0 * r2 - 3.0,
            1.0 + (2.0 * r2 - 2.0) * s,
            5.0 + s + (2.0 * r2 - 1.0) * p,
            1.0 + (5.0 - 2.0 * r2) * cp + 5.0 * dp + p,
            (4.0 - 2.0 * r2) * (1.0 + p) + dp,
            (3.0 - 2.0 * r2) * dp,
        ],
        RegionSpec::Sector { gamma } => {
            let sg = sector_sine(gamma);
            vec![
                -sg,
                1.0 + (1.0 - sg) * s,
                6.0 - sg + s + (2.0 - sg) * p,
                1.0 + 3.0 * cp + (6.0 - sg) * dp + p,
                2.0 + dp + 2.0 * p,
                dp,
            ]
        }
        RegionSpec::Nephroid => vec![
            -2.0,
            3.0 + s,
            21.0 + 3.0 * s + 4.0 * p,
            3.0 + 7.0 * (2.0 * cp + 3.0 * dp) + 3.0 * p,
            11.0 * (1.0 + p) + 3.0 * dp,
            8.0 * dp,
        ],
        RegionSpec::SigmoidSG => vec![
            1.0 - E,
            1.0 + E + 2.0 * s,
            7.0 * (1.0 + E) + (1.0 + E) * s + (3.0 + E) * p,
            (1.0 + E) * (1.0 + p) + (3.0 + 5.0 * E) * cp + 7.0 * (1.0 + E) * dp,
            2.0 * (1.0 + 2.0 * E) * (1.0 + p) + (1.0 + E) * dp,
            (1.0 + 3.0 * E) * dp,
        ],
        RegionSpec::RationalRL => unreachable!("handled by the radical form"),
    }
}

fn f3_coefficients(bp: f64, region: &RegionSpec) -> Option<Vec<f64>> {
    let r2 = SQRT_2;
    Some(match *region {
        RegionSpec::HalfPlane { alpha: a } => vec![a - 1.0, 1.0 + a * bp, 3.0 + bp, 1.0 + (1.0 - a) * bp, -a],
        RegionSpec::Lemniscate => vec![
            1.0 - r2,
            1.0 + r2 * (r2 - 1.0) * bp,
            5.0 + bp,
            1.0 + (1.0 + r2) * bp,
            r2,
        ],
        RegionSpec::Parabola => vec![-1.0, 2.0 + bp, 2.0 * (3.0 + bp), 2.0 + bp, -1.0],
        RegionSpec::Exponential => vec![1.0 - E, E + bp, E * (3.0 + bp), E + (E - 1.0) * bp, -1.0],
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{margin, radius_by_crossing, radius_by_equation, SolverOptions};

    fn sample_classes() -> Vec<ClassParams> {
        vec![
            ClassParams::f1(0.0, 0.0).unwrap(),
            ClassParams::f1(2.0, 2.0).unwrap(),
            ClassParams::f1(0.7, 1.3).unwrap(),
            ClassParams::f2(0.4, 1.6).unwrap(),
            ClassParams::f2(2.0, 0.0).unwrap(),
            ClassParams::f3(0.0).unwrap(),
            ClassParams::f3(1.7).unwrap(),
        ]
    }

    /// `equation / (margin · (1 - r²) · Q)` must not depend on `r`.
    fn proportionality_spread(class: &ClassParams, region: &RegionSpec, source: EquationSource) -> f64 {
        let eq = equation(class, region, source).unwrap();
        let (_, q) = envelope_quotient(class);
        let ratios: Vec<f64> = (1..12)
            .map(|k| {
                let r = k as f64 * 0.013;
                let m = margin(class, region, r).unwrap();
                eq.eval(r) / (m * (1.0 - r * r) * q.eval(r))
            })
            .collect();
        let first = ratios[0];
        ratios.iter().map(|x| (x / first - 1.0).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn proof_equations_are_multiples_of_the_envelope_margin() {
        for class in sample_classes() {
            for region in class.family().supported_regions(0.35, 0.6) {
                if region == RegionSpec::RationalRL {
                    continue;
                }
                let spread = proportionality_spread(&class, &region, EquationSource::Proof);
                assert!(spread < 1e-9, "{} {region}: {spread}", class.family());
            }
        }
    }

    #[test]
    fn statement_equations_agree_except_where_flagged() {
        for class in sample_classes() {
            for region in class.family().supported_regions(0.35, 0.6) {
                if region == RegionSpec::RationalRL {
                    continue;
                }
                let spread = proportionality_spread(&class, &region, EquationSource::Statement);
                let flagged = discrepancy(class.family(), &region).is_some();
                // the flagged terms vanish when c'd = 0 or d' = 1
                let degenerate = match class.family() {
                    Family::F1 => class.cp() * class.d() == 0.0,
                    Family::F2 => class.dp() == 1.0,
                    Family::F3 => true,
                };
                if flagged && !degenerate {
                    assert!(spread > 1e-6, "{} {region}", class.family());
                } else {
                    assert!(spread < 1e-9, "{} {region}: {spread}", class.family());
                }
            }
        }
    }

    #[test]
    fn radical_equation_roots_match_the_crossing() {
        for class in [ClassParams::f1(1.2, 0.3).unwrap(), ClassParams::f2(0.5, 1.0).unwrap()] {
            let by_eq = radius_by_equation(
                &class,
                &RegionSpec::RationalRL,
                EquationSource::Statement,
                &SolverOptions::default(),
            )
            .unwrap()
            .radius()
            .unwrap();
            let by_margin = radius_by_crossing(&class, &RegionSpec::RationalRL)
                .unwrap()
                .radius()
                .unwrap();
            assert!((by_eq - by_margin).abs() < 1e-10, "{by_eq} vs {by_margin}");
        }
    }

    #[test]
    fn radical_equation_is_minus_infinity_past_feasibility() {
        let eq = RadicalEquation {
            numerator: Polynomial::identity(),
            denominator: Polynomial::constant(1.0),
        };
        // a = 1/(1 - r²) > √2 + 1 when r > 0.77
        assert_eq!(eq.eval(0.9), f64::NEG_INFINITY);
        assert!(eq.eval(0.5).is_finite());
    }

    #[test]
    fn acceptance_polynomials() {
        let class = ClassParams::f1(2.0, 2.0).unwrap();
        let hp = statement_equation(&class, &RegionSpec::HalfPlane { alpha: 0.0 }).unwrap();
        let expected = Polynomial::new(vec![-1.0, 1.0, 14.0, 26.0, 19.0, 5.0]);
        assert!(hp.as_polynomial().unwrap().max_coeff_diff(&expected) < 1e-14);
        let class = ClassParams::f3(2.0).unwrap();
        let hp = statement_equation(&class, &RegionSpec::HalfPlane { alpha: 0.0 }).unwrap();
        let expected = Polynomial::new(vec![-1.0, 1.0, 5.0, 3.0]);
        assert!(hp.as_polynomial().unwrap().max_coeff_diff(&expected) < 1e-14);
    }

    #[test]
    fn f3_only_covers_four_regions() {
        let class = ClassParams::f3(1.0).unwrap();
        for region in RegionSpec::all(0.0, 0.5) {
            let res = statement_equation(&class, &region);
            assert_eq!(res.is_ok(), region.part() <= 4, "{region}");
        }
    }
}
