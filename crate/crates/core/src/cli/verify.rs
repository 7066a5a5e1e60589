use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::output::fmt_num;

use crate::envelope::{
    derive_params, discrepancies, discrepancy, equation, radius_by_crossing, ClassParams, EquationSource, Family,
    RadiusOutcome, DEFAULT_TOL, R_MAX,
};
use crate::oracle::{
    brute_radius, extremal_attains_envelope, extremal_for, extremals, lemma1_check, sharp_claimed, verify_sharpness,
    BruteOptions,
};
use crate::regions::{
    certified_center_limit, closed_form_contains, contains, disk_bound, BoundaryIndex, RegionError, RegionSpec,
    DEFAULT_BOUNDARY_SAMPLES,
};
use crate::rootfind::{smallest_root, RootOutcome, DEFAULT_SCAN_N};

/// Coefficient grid for `b` and `c`.
pub const GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Offset added to every statement equation by the corruption hook.
const CORRUPTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    pub skip_oracle: bool,
    pub corrupt_statement: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs every check; oracle-backed checks are skipped on request.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut results = vec![exact_specializations(), statement_agreement(opts.corrupt_statement)];
    if !opts.skip_oracle {
        results.push(oracle_bounds());
        results.push(sharpness_contacts());
        results.push(log_derivative_bound());
    }
    results.push(monotonicity());
    results.push(region_geometry());
    results
}

fn radius_or_one(outcome: &RadiusOutcome) -> f64 {
    outcome.radius().unwrap_or(1.0)
}

fn crossing(class: &ClassParams, region: &RegionSpec) -> Option<f64> {
    radius_by_crossing(class, region).ok().map(|o| radius_or_one(&o))
}

fn exact_specializations() -> CheckResult {
    let hp = RegionSpec::HalfPlane { alpha: 0.0 };
    let cases = [
        (Family::F1, -1.0, -1.0, hp, 0.2),
        (Family::F3, -1.0, 0.0, hp, 1.0 / 3.0),
        (Family::F3, -1.0 / 3.0, 0.0, hp, SQRT_2 - 1.0),
        (
            Family::F1,
            -1.0,
            -1.0,
            RegionSpec::Lemniscate,
            (-5.0 + (33.0 - 4.0 * SQRT_2).sqrt()) / (2.0 * SQRT_2),
        ),
    ];
    let mut worst: f64 = 0.0;
    for (family, b, c, region, expected) in cases {
        let got = derive_params(family, b, c)
            .ok()
            .and_then(|p| crossing(&p, &region))
            .unwrap_or(f64::NAN);
        worst = worst.max((got - expected).abs());
    }
    check(
        "exact-specializations",
        worst <= 1e-9,
        format!("max deviation {worst:.3e} over 4 cases"),
    )
}

/// Every supported (family, region) pair at every grid point, with the
/// parameters extrapolated where a derived parameter exceeds 2.
fn grid_pairs() -> Vec<(ClassParams, RegionSpec)> {
    let mut pairs = Vec::new();
    for &b in &GRID {
        for &c in &GRID {
            for family in Family::ALL {
                let class = ClassParams::extrapolated(family, b, c).expect("grid coefficients are in range");
                for region in family.supported_regions(0.0, 0.5) {
                    pairs.push((class.clone(), region));
                }
            }
        }
    }
    pairs
}

fn statement_agreement(corrupt: bool) -> CheckResult {
    let pairs = grid_pairs();
    let deviations: Vec<(f64, bool)> = pairs
        .par_iter()
        .map(|(class, region)| {
            let flagged = discrepancy(class.family(), region).is_some();
            let source = if flagged {
                EquationSource::Proof
            } else {
                EquationSource::Statement
            };
            let reference = radius_by_crossing(class, region).map(|o| radius_or_one(&o));
            let eq = equation(class, region, source);
            let offset = if corrupt { CORRUPTION } else { 0.0 };
            let root = eq
                .ok()
                .and_then(|eq| smallest_root(|r| eq.eval(r) + offset, 0.0, R_MAX, DEFAULT_SCAN_N, DEFAULT_TOL).ok());
            let got = match root {
                Some(RootOutcome::Root(r)) => r.value,
                Some(RootOutcome::NoRoot) => 1.0,
                None => f64::NAN,
            };
            let dev = reference.map(|x| (x - got).abs()).unwrap_or(f64::NAN);
            (dev, flagged)
        })
        .collect();
    let worst = deviations
        .iter()
        .map(|d| d.0)
        .fold(0.0, |a: f64, b| if b.is_nan() { f64::INFINITY } else { a.max(b) });
    let n_flagged_pairs = deviations.iter().filter(|d| d.1).count();
    check(
        "statement-vs-crossing",
        worst <= 1e-8 && discrepancies().len() == 2,
        format!(
            "{} pairs, max |statement - crossing| = {worst:.3e}; {} flagged equations checked in proof form at {} pairs",
            pairs.len(),
            discrepancies().len(),
            n_flagged_pairs
        ),
    )
}

/// Grid classes that satisfy the hypothesis and have extremals.
fn oracle_classes() -> Vec<ClassParams> {
    let mut classes = Vec::new();
    for &b in &GRID {
        for &c in &GRID {
            if let Ok(p) = derive_params(Family::F1, b, c) {
                classes.push(p);
            }
        }
        if let Ok(p) = derive_params(Family::F3, b, 0.0) {
            classes.push(p);
        }
    }
    classes
}

fn oracle_bounds() -> CheckResult {
    let opts = BruteOptions {
        r_tol: 1e-3,
        n_theta: 1440,
        n_rad: 48,
    };
    const TOL: f64 = 5e-3;
    let mut jobs = Vec::new();
    for class in oracle_classes() {
        for region in class.family().supported_regions(0.0, 0.5) {
            jobs.push((class.clone(), region));
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|(class, region)| {
            let mut fails = Vec::new();
            let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_else(|| "-".into());
            let label = format!(
                "{} b={} c={} {}",
                class.family(),
                opt(class.b()),
                opt(class.c()),
                region.name()
            );
            let Some(analytic) = crossing(class, region) else {
                return vec![format!("{label}: no analytic radius")];
            };
            match extremals(class) {
                Ok(exts) => {
                    for ext in exts {
                        match brute_radius(&ext.f, region, &opts) {
                            Ok(r) if r < analytic - TOL => {
                                fails.push(format!("{label}: brute {r:.4} < analytic {analytic:.4}"))
                            }
                            Ok(_) => {}
                            Err(e) => fails.push(format!("{label}: {e}")),
                        }
                    }
                }
                Err(e) => fails.push(format!("{label}: {e}")),
            }
            if sharp_claimed(class.family(), region) && extremal_attains_envelope(class) {
                match extremal_for(class, region).and_then(|ext| brute_radius(&ext.f, region, &opts)) {
                    Ok(r) if (r - analytic).abs() > TOL => {
                        fails.push(format!("{label}: sharp case brute {r:.4} vs analytic {analytic:.4}"))
                    }
                    Ok(_) => {}
                    Err(e) => fails.push(format!("{label}: {e}")),
                }
            }
            fails
        })
        .collect();
    check(
        "oracle-lower-bound",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} (class, region) pairs, lower bound and sharp equality within {TOL}",
                jobs.len()
            )
        } else {
            failures.join("; ")
        },
    )
}

fn sharpness_contacts() -> CheckResult {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut problems = Vec::new();
    let cases = oracle_classes().into_iter().filter(extremal_attains_envelope);
    for class in cases {
        for region in class.family().supported_regions(0.0, 0.5) {
            if !sharp_claimed(class.family(), &region) {
                continue;
            }
            let Some(r) = crossing(&class, &region) else { continue };
            match verify_sharpness(&class, &region, r) {
                Ok(rep) => {
                    worst = worst.max(rep.deviation);
                    count += 1;
                }
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    check(
        "sharpness-contacts",
        worst <= 1e-6 && problems.is_empty(),
        format!(
            "{count} contacts, max |functional - target| = {worst:.3e}{}",
            problems.join("; ")
        ),
    )
}

fn log_derivative_bound() -> CheckResult {
    let mut worst: f64 = 0.0;
    for b in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for alpha in [0.0, 0.25, 0.5, 0.75] {
            worst = worst.max(lemma1_check(b, alpha, 10_000).unwrap_or(f64::INFINITY));
        }
    }
    check(
        "log-derivative-bound",
        worst <= 1e-9,
        format!("max violation {worst:.3e} over 20 parameter pairs"),
    )
}

fn monotonicity() -> CheckResult {
    let steps: Vec<f64> = (0..=8).map(|i| i as f64 * 0.25).collect();
    let mut problems = Vec::new();
    for region in RegionSpec::all(0.0, 0.5) {
        let radius =
            |cp: f64, d: f64| crossing(&ClassParams::f1(cp, d).expect("valid envelope"), &region).unwrap_or(f64::NAN);
        let table: Vec<Vec<f64>> = steps
            .iter()
            .map(|&cp| steps.iter().map(|&d| radius(cp, d)).collect())
            .collect();
        for i in 0..steps.len() {
            for j in 0..steps.len() {
                if i + 1 < steps.len() && !(table[i + 1][j] <= table[i][j] + 1e-10) {
                    problems.push(format!("{region}: c' {} -> {}", steps[i], steps[i + 1]));
                }
                if j + 1 < steps.len() && !(table[i][j + 1] <= table[i][j] + 1e-10) {
                    problems.push(format!("{region}: d {} -> {}", steps[j], steps[j + 1]));
                }
            }
        }
    }
    let classes = [
        ClassParams::f1(0.5, 1.5),
        ClassParams::f2(1.0, 0.5),
        ClassParams::f3(1.0),
    ];
    for class in classes.iter().map(|c| c.as_ref().expect("valid envelope")) {
        let radii: Vec<f64> = [0.0, 0.25, 0.5, 0.75]
            .iter()
            .map(|&alpha| crossing(class, &RegionSpec::HalfPlane { alpha }).unwrap_or(f64::NAN))
            .collect();
        if !radii.windows(2).all(|w| w[1] < w[0]) {
            problems.push(format!("{}: alpha radii {radii:?}", class.family()));
        }
        if class.family() != Family::F3 {
            let hp = crossing(class, &RegionSpec::HalfPlane { alpha: 0.0 }).unwrap_or(f64::NAN);
            let sec = crossing(class, &RegionSpec::Sector { gamma: 1.0 }).unwrap_or(f64::NAN);
            if !((hp - sec).abs() <= 1e-10) {
                problems.push(format!("{}: sector(1) {sec} vs halfplane(0) {hp}", class.family()));
            }
        }
    }
    check(
        "monotonicity",
        problems.is_empty(),
        if problems.is_empty() {
            "non-increasing in c' and d on a 9x9 grid, strictly decreasing in alpha, sector(1) = halfplane(0)".into()
        } else {
            problems.join("; ")
        },
    )
}

fn region_geometry() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut problems = Vec::new();
    let mut compared = 0usize;
    for region in RegionSpec::all(0.3, 0.6) {
        if !region.has_closed_form() {
            continue;
        }
        let index = BoundaryIndex::new(&region, DEFAULT_BOUNDARY_SAMPLES).expect("valid resolution");
        for _ in 0..10_000 {
            let w = Complex64::new(rng.gen_range(-1.0..3.0), rng.gen_range(-2.0..2.0));
            let closed = closed_form_contains(&region, w).expect("closed-form region");
            match index.classify(w) {
                Ok(inside) if inside != closed => problems.push(format!("{region} at {w}")),
                Ok(_) => compared += 1,
                Err(RegionError::BoundaryIndeterminate { .. }) => {}
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    let regions = RegionSpec::all(0.3, 0.6);
    for _ in 0..200 {
        let region = regions[rng.gen_range(0..regions.len())];
        let limit = certified_center_limit(&region).min(3.0);
        let a = rng.gen_range(1.0..limit);
        let Ok(bound) = disk_bound(&region, a) else { continue };
        if bound <= 0.0 {
            continue;
        }
        let rho = rng.gen_range(0.0..bound);
        let w = a + Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI));
        if !contains(&region, w) {
            problems.push(format!(
                "{region}: disk about {a} of radius {bound} leaves the region at {w}"
            ));
        }
    }
    check(
        "region-geometry",
        problems.is_empty(),
        if problems.is_empty() {
            format!("{compared} predicate/winding comparisons agree; 200 disk-bound samples inside")
        } else {
            problems.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    )
}
