//! Acceptance suite: one PASS/FAIL line per criterion on stderr, then a
//! single assertion over all of them.

use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use starlike_radius::envelope::{
    derive_params, discrepancy, radius_by_crossing, radius_by_equation, statement_equation, ClassParams,
    EquationSource, Family, SolverOptions,
};
use starlike_radius::oracle::{
    brute_radius, build_extremal, extremal_attains_envelope, extremals, lemma1_check, sharp_claimed, verify_sharpness,
    BruteOptions, Contact,
};
use starlike_radius::regions::{
    certified_center_limit, closed_form_contains, contains, disk_bound, BoundaryIndex, RegionError, RegionSpec,
    DEFAULT_BOUNDARY_SAMPLES,
};
use starlike_radius::rootfind::Polynomial;

const GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn crossing(class: &ClassParams, region: &RegionSpec) -> Option<f64> {
    radius_by_crossing(class, region).expect("supported pair").radius()
}

fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn expand(factors: &[&[f64]]) -> Vec<f64> {
    factors.iter().fold(vec![1.0], |acc, f| poly_mul(&acc, f))
}

/// Remainder of `p / q` by long division, relative to the largest
/// coefficient of `p`.
fn division_remainder(p: &Polynomial, q: &[f64]) -> f64 {
    let mut rem = p.coeffs().to_vec();
    let scale = rem.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let lead = *q.last().unwrap();
    while rem.len() >= q.len() {
        let k = rem.pop().unwrap() / lead;
        let shift = rem.len() + 1 - q.len();
        for (i, qc) in q[..q.len() - 1].iter().enumerate() {
            rem[shift + i] -= k * qc;
        }
    }
    rem.iter().fold(0.0f64, |m, c| m.max(c.abs())) / scale
}

fn exact_specializations() -> Outcome {
    let hp = RegionSpec::half_plane(0.0).unwrap();
    let lem_root = (-5.0 + (33.0 - 4.0 * SQRT_2).sqrt()) / (2.0 * SQRT_2);
    // (family, b, c, region, closed form, factor of the statement polynomial vanishing there)
    let cases: Vec<(Family, f64, f64, RegionSpec, f64, Vec<f64>)> = vec![
        // (5r - 1)(r + 1)^4
        (
            Family::F1,
            -1.0,
            -1.0,
            hp,
            0.2,
            expand(&[&[-1.0, 5.0], &[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]),
        ),
        (
            Family::F3,
            -1.0,
            0.0,
            hp,
            1.0 / 3.0,
            // (3r - 1)(r + 1)^2
            expand(&[&[-1.0, 3.0], &[1.0, 1.0], &[1.0, 1.0]]),
        ),
        // r³ + 3r² + r - 1 = (r + 1)(r² + 2r - 1)
        (
            Family::F3,
            -1.0 / 3.0,
            0.0,
            hp,
            SQRT_2 - 1.0,
            expand(&[&[1.0, 1.0], &[-1.0, 2.0, 1.0]]),
        ),
        // √2 r² + 5r + 1 - √2 = 0
        (
            Family::F1,
            -1.0,
            -1.0,
            RegionSpec::Lemniscate,
            lem_root,
            vec![1.0 - SQRT_2, 5.0, SQRT_2],
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (family, b, c, region, exact, factored) in &cases {
        let class = derive_params(*family, *b, *c).unwrap();
        let r = crossing(&class, region).unwrap();
        worst = worst.max((r - exact).abs());
        let residual = Polynomial::new(factored.clone()).eval(*exact);
        if residual.abs() > 1e-12 {
            notes.push(format!(
                "{family} {region}: factored form leaves {residual:e} at the closed form"
            ));
        }
        let stmt = statement_equation(&class, region).unwrap();
        let poly = stmt.as_polynomial().expect("polynomial equation");
        let gap = division_remainder(poly, factored);
        if gap > 1e-12 {
            notes.push(format!(
                "{family} {region}: factored form does not divide the statement polynomial ({gap:e})"
            ));
        }
    }
    let ok = worst <= 1e-9 && notes.is_empty();
    let mut detail = format!(
        "max |radius - closed form| = {worst:.3e} over {} cases (tol 1e-9)",
        cases.len()
    );
    for n in notes {
        detail += "; ";
        detail += &n;
    }
    outcome(ok, detail)
}

fn statement_vs_crossing() -> Outcome {
    let opts = SolverOptions::default();
    let mut worst: f64 = 0.0;
    let mut worst_flagged: f64 = 0.0;
    let mut pairs = 0;
    let mut problems = Vec::new();
    for &b in &GRID {
        for &c in &GRID {
            for family in Family::ALL {
                let class = ClassParams::extrapolated(family, b, c).unwrap();
                for region in family.supported_regions(0.0, 1.0) {
                    pairs += 1;
                    let flagged = discrepancy(family, &region).is_some();
                    let source = if flagged {
                        EquationSource::Proof
                    } else {
                        EquationSource::Statement
                    };
                    let eq = radius_by_equation(&class, &region, source, &opts).unwrap();
                    let cr = radius_by_crossing(&class, &region).unwrap();
                    let diff = match (eq.radius(), cr.radius()) {
                        (Some(x), Some(y)) => (x - y).abs(),
                        (None, None) => 0.0,
                        _ => f64::INFINITY,
                    };
                    if flagged {
                        worst_flagged = worst_flagged.max(diff);
                    } else {
                        worst = worst.max(diff);
                    }
                    if diff > 1e-8 {
                        problems.push(format!("{family} b={b} c={c} {region}: {diff:e}"));
                    }
                }
            }
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("{pairs} pairs; max diff {worst:.3e}, flagged pairs in proof form {worst_flagged:.3e} (tol 1e-8)")
    } else {
        problems.into_iter().take(5).collect::<Vec<_>>().join("; ")
    };
    outcome(ok && pairs == 25 * 28, detail)
}

fn admissible_classes() -> Vec<ClassParams> {
    let mut out = Vec::new();
    for &b in &GRID {
        for &c in &GRID {
            if let Ok(class) = derive_params(Family::F1, b, c) {
                out.push(class);
            }
        }
        if let Ok(class) = derive_params(Family::F3, b, 0.0) {
            out.push(class);
        }
    }
    out
}

fn oracle_lower_bound() -> Outcome {
    const TOL: f64 = 5e-3;
    let opts = BruteOptions {
        r_tol: 1e-4,
        n_theta: 1440,
        n_rad: 48,
    };
    let jobs: Vec<(ClassParams, RegionSpec)> = admissible_classes()
        .into_iter()
        .flat_map(|class| {
            let regions = class.family().supported_regions(0.0, 1.0);
            regions.into_iter().map(move |r| (class.clone(), r))
        })
        .collect();
    let results: Vec<(bool, bool, String)> = jobs
        .par_iter()
        .map(|(class, region)| {
            let analytic = crossing(class, region).unwrap();
            let brute: Vec<f64> = extremals(class)
                .unwrap()
                .iter()
                .map(|e| brute_radius(&e.f, region, &opts).unwrap())
                .collect();
            let lowest = brute.iter().copied().fold(f64::INFINITY, f64::min);
            let equality = sharp_claimed(class.family(), region) && extremal_attains_envelope(class);
            let mut ok = lowest >= analytic - TOL;
            if equality {
                ok &= (lowest - analytic).abs() <= TOL;
            }
            let label = format!("{} b={:?} c={:?} {region}", class.family(), class.b(), class.c());
            (
                ok,
                equality,
                format!("{label}: analytic {analytic:.5}, brute {lowest:.5}"),
            )
        })
        .collect();
    let equalities = results.iter().filter(|r| r.1).count();
    let failures: Vec<&String> = results.iter().filter(|r| !r.0).map(|r| &r.2).collect();
    let detail = if failures.is_empty() {
        format!(
            "{} pairs above analytic - 5e-3, {equalities} sharp pairs equal within 5e-3 (n_theta 1440, n_rad 48)",
            results.len()
        )
    } else {
        failures
            .iter()
            .take(5)
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join("; ")
    };
    outcome(failures.is_empty() && equalities > 0, detail)
}

/// `z f'/f` summed factor by factor, written out from the extremal formulas.
fn extremal_log_deriv(family: Family, contact: Contact, b: f64, c: f64, z: Complex64) -> Complex64 {
    let quad = |s: f64| z * (s + 2.0 * z) / (1.0 + s * z + z * z);
    match (family, contact) {
        (Family::F1, Contact::Plus) => {
            let (d, cc) = (5.0 * b - 3.0 * c, 3.0 * c + 1.0);
            1.0 - 2.0 * z / (1.0 - z) + z / (1.0 + z) - quad(-d) - quad(-cc)
        }
        (Family::F1, Contact::Minus) => {
            let (d, cc) = (5.0 * b - 3.0 * c, 3.0 * c + 1.0);
            1.0 + quad(d) + quad(cc) + 4.0 * z * z / (1.0 - z * z) - z / (1.0 + z)
        }
        (Family::F3, _) => 1.0 + quad(1.0 + 3.0 * b) - z / (1.0 + z) + 2.0 * z * z / (1.0 - z * z),
        (Family::F2, _) => unreachable!(),
    }
}

fn sharpness_contacts() -> Outcome {
    type Functional = fn(Complex64) -> f64;
    let parts: Vec<(RegionSpec, Contact, f64, Functional)> = vec![
        (RegionSpec::half_plane(0.0).unwrap(), Contact::Plus, 0.0, |w| w.re),
        (RegionSpec::half_plane(0.5).unwrap(), Contact::Plus, 0.5, |w| w.re),
        (RegionSpec::Lemniscate, Contact::Minus, 1.0, |w| (w * w - 1.0).norm()),
        (RegionSpec::Cardioid, Contact::Plus, 1.0 / 3.0, |w| w.norm()),
        (RegionSpec::Sine, Contact::Minus, 1.0 + 1f64.sin(), |w| w.norm()),
        (RegionSpec::RationalR, Contact::Plus, 2.0 * (SQRT_2 - 1.0), |w| w.norm()),
        (RegionSpec::Nephroid, Contact::Minus, 5.0 / 3.0, |w| w.norm()),
        (RegionSpec::SigmoidSG, Contact::Minus, 1.0, |w| {
            (w / (2.0 - w)).ln().norm()
        }),
    ];
    let mut cases = Vec::new();
    for (b, c) in [(-1.0, -1.0), (-0.5, -0.5)] {
        for p in &parts {
            cases.push((Family::F1, b, c, *p));
        }
    }
    for b in [-1.0, -0.5] {
        cases.push((Family::F3, b, 0.0, parts[2]));
    }
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for (family, b, c, (region, contact, target, functional)) in &cases {
        let class = derive_params(*family, *b, *c).unwrap();
        assert!(extremal_attains_envelope(&class));
        let r = crossing(&class, region).unwrap();
        let z = Complex64::new(contact.sign() * r, 0.0);
        let w = extremal_log_deriv(*family, *contact, *b, *c, z);
        let dev = (functional(w) - target).abs();
        worst = worst.max(dev);
        let lib = verify_sharpness(&class, region, r).unwrap();
        let ext = build_extremal(&class, *contact).unwrap();
        let lib_w = ext.f.log_deriv(z).unwrap();
        if lib.deviation > 1e-6 || (lib_w - w).norm() > 1e-9 {
            problems.push(format!(
                "{family} b={b} c={c} {region}: library deviation {:e}",
                lib.deviation
            ));
        }
        if dev > 1e-6 {
            problems.push(format!(
                "{family} b={b} c={c} {region}: |functional - target| = {dev:e}"
            ));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!(
            "{} contacts, max |functional - target| = {worst:.3e} (tol 1e-6)",
            cases.len()
        )
    } else {
        problems.join("; ")
    };
    outcome(ok, detail)
}

/// Roots of `k z² + 2β z + 1`, computed without cancellation.
fn quadratic_roots(k: f64, beta: f64) -> Vec<Complex64> {
    if k == 0.0 {
        return if beta == 0.0 {
            vec![]
        } else {
            vec![Complex64::new(-0.5 / beta, 0.0)]
        };
    }
    let s = Complex64::new(beta * beta - k, 0.0).sqrt();
    let s = if (s.re * beta) < 0.0 { -s } else { s };
    let q = -(beta + s);
    vec![q / k, 1.0 / q]
}

/// `max(|zp'/p| - bound)` with `p = (1 + b(1+k)z + k z²) / (1 - z²)`,
/// `k = 1 - 2α`, which equals `(1 + k w)/(1 - w)` for `w = z(z+b)/(1+bz)`.
fn lemma1_excess(b: f64, alpha: f64, samples: usize) -> f64 {
    let k = 1.0 - 2.0 * alpha;
    let roots = quadratic_roots(k, b * (1.0 + k) / 2.0);
    let rings = 100;
    let angles = samples / rings;
    let mut worst = f64::NEG_INFINITY;
    for j in 1..=rings {
        let r = 0.999 * j as f64 / rings as f64;
        let bound = 2.0 * (1.0 - alpha) * r / (1.0 - r * r) * (b * r * r + 2.0 * r + b)
            / ((1.0 - 2.0 * alpha) * r * r + 2.0 * (1.0 - alpha) * b * r + 1.0);
        for i in 0..angles {
            let z = Complex64::from_polar(r, 2.0 * PI * i as f64 / angles as f64);
            let mut v = -(z / (z + 1.0) + z / (z - 1.0));
            for &root in &roots {
                v += z / (z - root);
            }
            worst = worst.max(v.norm() - bound);
        }
    }
    worst
}

fn log_derivative_bound() -> Outcome {
    let mut worst_lib: f64 = 0.0;
    let mut worst_ref: f64 = 0.0;
    for b in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for alpha in [0.0, 0.25, 0.5, 0.75] {
            worst_lib = worst_lib.max(lemma1_check(b, alpha, 10_000).unwrap());
            worst_ref = worst_ref.max(lemma1_excess(b, alpha, 10_000));
        }
    }
    outcome(
        worst_lib <= 1e-9 && worst_ref <= 1e-9,
        format!(
            "max violation {worst_lib:.3e} (library grid), {worst_ref:.3e} (independent p) over 20 pairs (tol 1e-9)"
        ),
    )
}

fn monotonicity() -> Outcome {
    let steps: Vec<f64> = (0..9).map(|i| i as f64 * 0.25).collect();
    let mut problems = Vec::new();
    for region in RegionSpec::all(0.2, 0.5) {
        let table: Vec<Vec<f64>> = steps
            .iter()
            .map(|&cp| {
                steps
                    .iter()
                    .map(|&d| crossing(&ClassParams::f1(cp, d).unwrap(), &region).unwrap_or(1.0))
                    .collect()
            })
            .collect();
        for i in 0..steps.len() {
            for j in 0..steps.len() {
                if i + 1 < steps.len() && table[i + 1][j] > table[i][j] + 1e-10 {
                    problems.push(format!("{region}: increases in c' at ({}, {})", steps[i], steps[j]));
                }
                if j + 1 < steps.len() && table[i][j + 1] > table[i][j] + 1e-10 {
                    problems.push(format!("{region}: increases in d at ({}, {})", steps[i], steps[j]));
                }
            }
        }
    }
    for family in Family::ALL {
        let class = derive_params(family, -0.5, -0.5).unwrap();
        let radii: Vec<f64> = (0..10)
            .map(|i| crossing(&class, &RegionSpec::half_plane(i as f64 / 10.0).unwrap()).unwrap())
            .collect();
        if radii.windows(2).any(|w| w[1] >= w[0]) {
            problems.push(format!("{family}: not strictly decreasing in alpha"));
        }
    }
    let mut worst: f64 = 0.0;
    let sector_classes = GRID
        .iter()
        .flat_map(|&b| GRID.iter().map(move |&c| (b, c)))
        .flat_map(|(b, c)| [derive_params(Family::F1, b, c), derive_params(Family::F2, b, c)])
        .filter_map(Result::ok);
    for class in sector_classes {
        let s = crossing(&class, &RegionSpec::sector(1.0).unwrap()).unwrap();
        let h = crossing(&class, &RegionSpec::half_plane(0.0).unwrap()).unwrap();
        worst = worst.max((s - h).abs());
    }
    if worst > 1e-10 {
        problems.push(format!("sector(1) vs halfplane(0) differ by {worst:e}"));
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("9x9 (c', d) grid over 12 regions, alpha strictly decreasing, |sector(1) - halfplane(0)| = {worst:.3e}")
    } else {
        problems.into_iter().take(5).collect::<Vec<_>>().join("; ")
    };
    outcome(ok, detail)
}

fn region_geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    let mut compared = 0;
    let mut skipped = 0;
    let duals: Vec<RegionSpec> = RegionSpec::all(0.25, 0.5)
        .into_iter()
        .filter(|r| r.has_closed_form())
        .collect();
    for region in &duals {
        let index = BoundaryIndex::new(region, DEFAULT_BOUNDARY_SAMPLES).unwrap();
        for _ in 0..10_000 {
            let w = Complex64::new(rng.gen_range(-1.0..3.0), rng.gen_range(-2.0..2.0));
            match index.classify(w) {
                Ok(inside) => {
                    compared += 1;
                    if inside != closed_form_contains(region, w).unwrap() {
                        problems.push(format!("{region} disagrees at {w}"));
                    }
                }
                Err(RegionError::BoundaryIndeterminate { .. }) => skipped += 1,
                Err(e) => problems.push(e.to_string()),
            }
        }
    }
    if skipped * 100 > compared {
        problems.push(format!("{skipped} boundary-indeterminate points"));
    }
    let regions = RegionSpec::all(0.25, 0.5);
    let mut disks = 0;
    while disks < 200 {
        let region = regions[rng.gen_range(0..regions.len())];
        let a = rng.gen_range(1.0..certified_center_limit(&region).min(3.0));
        let bound = disk_bound(&region, a).unwrap();
        if bound <= 0.0 {
            continue;
        }
        disks += 1;
        let rho = bound * rng.gen::<f64>().powf(0.25);
        let w = a + Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI));
        if !contains(&region, w) {
            problems.push(format!(
                "{region}: disk about {a} of radius {bound} leaves the region at {w}"
            ));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!(
            "{} regions x 10^4 points agree ({skipped} on the boundary band skipped); 200 disk samples inside",
            duals.len()
        )
    } else {
        problems.into_iter().take(5).collect::<Vec<_>>().join("; ")
    };
    outcome(ok, detail)
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [Criterion; 7] = [
        ("exact specializations", exact_specializations),
        ("statement/crossing agreement", statement_vs_crossing),
        ("oracle lower bound", oracle_lower_bound),
        ("sharpness contacts", sharpness_contacts),
        ("logarithmic-derivative bound", log_derivative_bound),
        ("monotonicity", monotonicity),
        ("region geometry", region_geometry),
    ];
    let mut stderr = std::io::stderr();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        let secs = t.elapsed().as_secs_f64();
        writeln!(
            stderr,
            "[acceptance] {status} {}. {name}: {} [{secs:.1}s]",
            i + 1,
            o.detail
        )
        .unwrap();
        if !o.passed {
            failed.push(*name);
        }
    }
    let total = start.elapsed().as_secs_f64();
    writeln!(stderr, "[acceptance] total {total:.1}s").unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
