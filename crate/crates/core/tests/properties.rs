use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use starlike_radius::cli::output::{fmt_num, round12};
use starlike_radius::envelope::{
    derive_params, growth, margin, radius_by_crossing, ClassParams, Family, RadiusOutcome,
};
use starlike_radius::oracle::{build_extremal, Contact, SchwarzBlock};
use starlike_radius::regions::{
    boundary, certified_center_limit, closed_form_contains, contains, disk_bound, generating_map, membership,
    BoundaryIndex, RegionError, RegionSpec, DEFAULT_BOUNDARY_SAMPLES,
};
use starlike_radius::rootfind::{smallest_root, Polynomial, RootOutcome, DEFAULT_SCAN_N};

fn regions() -> [RegionSpec; 12] {
    RegionSpec::all(0.3, 0.7)
}

fn region() -> impl Strategy<Value = RegionSpec> {
    (0..12usize).prop_map(|i| regions()[i])
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::F1), Just(Family::F2), Just(Family::F3)]
}

/// Classes satisfying the derived-parameter hypothesis.
fn admissible() -> impl Strategy<Value = ClassParams> {
    (family(), -1.0..=1.0f64, -1.0..=1.0f64)
        .prop_filter_map("derived parameter above 2", |(f, b, c)| derive_params(f, b, c).ok())
}

fn closed_form_indices() -> &'static Vec<(RegionSpec, BoundaryIndex)> {
    static CELL: OnceLock<Vec<(RegionSpec, BoundaryIndex)>> = OnceLock::new();
    CELL.get_or_init(|| {
        regions()
            .into_iter()
            .filter(|r| r.has_closed_form())
            .map(|r| (r, BoundaryIndex::new(&r, DEFAULT_BOUNDARY_SAMPLES).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn disk_bound_is_sufficient(r in region(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let a = 1.0 + u * (certified_center_limit(&r).min(3.0) - 1.0);
        let bound = disk_bound(&r, a).unwrap();
        prop_assume!(bound > 0.0);
        let rho = bound * v.max(1e-6) * (1.0 - 1e-9);
        for k in 0..64 {
            let w = a + Complex64::from_polar(rho, 2.0 * PI * k as f64 / 64.0);
            prop_assert!(contains(&r, w), "{r}: a = {a}, rho = {rho}, w = {w}");
        }
    }

    #[test]
    fn predicate_matches_winding(i in 0..7usize, x in -1.0..3.0f64, y in -2.0..2.0f64) {
        let (r, index) = &closed_form_indices()[i];
        let w = Complex64::new(x, y);
        match index.classify(w) {
            Ok(inside) => prop_assert_eq!(inside, closed_form_contains(r, w).unwrap(), "{} at {}", r, w),
            Err(RegionError::BoundaryIndeterminate { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn image_of_the_disk_is_inside(r in region(), rho in 0.0..0.98f64, theta in 0.0..(2.0 * PI)) {
        let w = generating_map(&r, Complex64::from_polar(rho, theta));
        prop_assert!(contains(&r, w), "{r}: phi({rho} e^i{theta}) = {w}");
    }

    #[test]
    fn boundary_points_are_not_interior(r in region(), theta in 0.01..(2.0 * PI - 0.01)) {
        // Closed-form predicates have no indeterminate band, so rounding may
        // land a sampled boundary point on either side.
        prop_assume!(!r.has_closed_form());
        let w = boundary(&r, theta);
        prop_assert!(!matches!(membership(&r, w), Ok(true)), "{r}: boundary({theta}) = {w}");
    }

    #[test]
    fn envelope_grows_from_zero(class in admissible(), r1 in 0.001..0.99f64, r2 in 0.001..0.99f64) {
        prop_assert_eq!(growth(&class, 0.0).unwrap().1, 0.0);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(growth(&class, lo).unwrap().1 < growth(&class, hi).unwrap().1);
    }

    #[test]
    fn radius_shrinks_with_f1_parameters(
        r in region(),
        cp in 0.0..=2.0f64, dcp in 0.0..=1.0f64,
        d in 0.0..=2.0f64, dd in 0.0..=1.0f64,
    ) {
        let small = ClassParams::f1(cp * (1.0 - dcp), d * (1.0 - dd)).unwrap();
        let large = ClassParams::f1(cp, d).unwrap();
        let rs = radius_by_crossing(&small, &r).unwrap().radius().unwrap();
        let rl = radius_by_crossing(&large, &r).unwrap().radius().unwrap();
        prop_assert!(rl <= rs + 1e-12, "{r}: {rl} > {rs}");
    }

    #[test]
    fn radius_result_is_certified(class in admissible(), i in 0..12usize) {
        let r = regions()[i];
        prop_assume!(class.family().supports(&r));
        match radius_by_crossing(&class, &r).unwrap() {
            RadiusOutcome::Radius(res) => {
                prop_assert!(res.radius > 0.0 && res.radius < 1.0);
                prop_assert!(res.residual.abs() <= 1e-10);
                prop_assert!(res.bracket.0 <= res.radius && res.radius <= res.bracket.1);
                prop_assert!(res.bracket.1 - res.bracket.0 <= 1e-12);
                prop_assert!(margin(&class, &r, res.bracket.0).unwrap() >= 0.0);
            }
            RadiusOutcome::WholeDisk { .. } => prop_assert!(false, "no radius for {r}"),
        }
        prop_assert_eq!(margin(&class, &r, 0.0).unwrap(), disk_bound(&r, 1.0).unwrap());
        prop_assert!(disk_bound(&r, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn extremal_log_derivative_decomposes(
        b in -1.0..=1.0f64, c in -1.0..=1.0f64, minus in any::<bool>(),
        rho in 0.0..0.95f64, theta in 0.0..(2.0 * PI),
    ) {
        let Ok(class) = derive_params(Family::F1, b, c) else { return Ok(()) };
        let contact = if minus { Contact::Minus } else { Contact::Plus };
        let ext = build_extremal(&class, contact).unwrap();
        let z = Complex64::from_polar(rho, theta);
        let direct = ext.f.log_deriv(z).unwrap();
        let blocks = ext.log_deriv_by_blocks(z).unwrap();
        prop_assert!((direct - blocks).norm() <= 1e-12 * (1.0 + direct.norm()), "{direct} vs {blocks}");
    }

    #[test]
    fn schwarz_blocks_map_the_disk_into_itself(a in -1.0..=1.0f64, rho in 0.0..0.999f64, theta in 0.0..(2.0 * PI)) {
        let w = SchwarzBlock::new(a).unwrap();
        let z = Complex64::from_polar(rho, theta);
        prop_assert_eq!(w.eval(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        prop_assert!(w.eval(z).norm() <= rho * (1.0 + 1e-12));
    }

    #[test]
    fn smallest_root_recovers_planted_root(t in 0.01..0.99f64, p in 0.0..5.0f64, q in 0.01..5.0f64) {
        // (r - t)(r² + p r + q) has no other root in (0, 1).
        let poly = Polynomial::new(vec![-t * q, q - t * p, p - t, 1.0]);
        let first = smallest_root(|r| poly.eval(r), 0.0, 1.0, DEFAULT_SCAN_N, 1e-12).unwrap();
        let second = smallest_root(|r| poly.eval(r), 0.0, 1.0, DEFAULT_SCAN_N, 1e-12).unwrap();
        prop_assert_eq!(&first, &second);
        match first {
            RootOutcome::Root(root) => {
                prop_assert!((root.value - t).abs() <= 1e-11, "{} vs {t}", root.value);
                prop_assert!(root.bracket.0 <= root.value && root.value <= root.bracket.1);
            }
            RootOutcome::NoRoot => prop_assert!(false, "missed root {t}"),
        }
    }

    #[test]
    fn printed_numbers_round_trip(x in prop::num::f64::NORMAL) {
        prop_assert_eq!(fmt_num(x).parse::<f64>().unwrap(), round12(x));
    }
}
