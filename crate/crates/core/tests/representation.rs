use proptest::prelude::*;
use qeuclid_core::representation::{self as rep, build_operators, check_relations_on, IrrepParams, RELATION_TOL};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn residuals_do_not_depend_on_truncation(q in 1.2f64..3.0, c_frac in 0.0f64..1.0, neg in any::<bool>()) {
        let c = 1.0 + c_frac * (q - 1.0) * 0.999;
        let eta = if neg { -1 } else { 1 };
        let small = build_operators(&IrrepParams::new(eta, c, q, 5, 4, 3).unwrap()).unwrap();
        let large = build_operators(&IrrepParams::new(eta, c, q, 8, 6, 5).unwrap()).unwrap();
        let a = check_relations_on(&small, |b| small.is_interior(b));
        let b = check_relations_on(&large, |b| small.is_interior(b));
        prop_assert_eq!(a.interior_states, b.interior_states);
        for (x, y) in a.residuals.iter().zip(&b.residuals).filter(|(x, _)| !x.name.contains("n0 = 0")) {
            prop_assert_eq!(&x.name, &y.name);
            prop_assert!((x.value - y.value).abs() <= 1e-15, "{}: {:e} vs {:e}", x.name, x.value, y.value);
            prop_assert!(x.passed && y.passed, "{}: {:e}", x.name, x.value);
        }
    }

    #[test]
    fn ladder_matches_closed_form(q in 1.1f64..4.0, c_frac in 0.0f64..1.0, n0 in 0u32..10, n in -6i32..=6) {
        let c = 1.0 + c_frac * (q - 1.0) * 0.999;
        let p = IrrepParams::new(1, c, q, 10, 6, 2).unwrap();
        let (a, b) = p.ladder_diagonals(n0, n);
        let r2 = p.r_value(n).powi(2);
        prop_assert!((b - p.xm_xp_closed(n0, n)).abs() <= 1e-12 * r2);
        // x+x- on n0 is x-x+ on n0 + 1
        prop_assert!((a - p.ladder_diagonals(n0 + 1, n).1).abs() <= 1e-12 * r2);
    }
}

#[test]
fn acceptance_parameters_pass() {
    for p in [IrrepParams::new(1, 1.2, 1.5, 8, 6, 4).unwrap(), IrrepParams::new(-1, 1.0, 2.0, 8, 6, 4).unwrap()] {
        let r = rep::check_relations(&p).unwrap();
        assert!(r.passed(), "{:?}", r.residuals.iter().filter(|x| !x.passed).collect::<Vec<_>>());
        assert!(r.residuals.iter().all(|x| x.tolerance <= RELATION_TOL));
        let s = rep::spectra_report(&p).unwrap();
        assert!(s.passed(), "{}", s.first_failure().unwrap_or_default());
    }
}

#[test]
fn limit_map_step_is_alpha_squared() {
    let p = IrrepParams::new(1, 1.2, 1.5, 8, 6, 4).unwrap();
    let map = rep::limit_map(&p).unwrap();
    let levels = map.y0_levels();
    for w in levels.windows(2) {
        assert!((w[1] - w[0] - map.alpha.powi(2)).abs() < 1e-12);
    }
    assert!(levels[0] < 0.0 && *levels.last().unwrap() > 0.0);
}
