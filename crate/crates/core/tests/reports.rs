use lg_moonshine::selftest::run_suite;
use lg_moonshine::verify::{composed_series, run_verify_with};
use lg_moonshine::{elliptic_j_series, run_verify, FaultInjection, PointKind, Rational, VerificationReport};

#[test]
fn report_json_round_trip() {
    for point in PointKind::ALL {
        let rep = run_verify(point, 12).unwrap();
        let back = VerificationReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}

#[test]
fn malformed_report_is_a_parse_error() {
    assert!(VerificationReport::from_json("{\"point\": \"triangle\"}").is_err());
}

#[test]
fn prefixes_are_stable_across_orders() {
    for point in PointKind::ALL {
        let short = composed_series(point, 12, &FaultInjection::none()).unwrap().truncate(12);
        let long = composed_series(point, 24, &FaultInjection::none()).unwrap();
        assert_eq!(short.first_mismatch(&long.truncate(12)), None, "{point}");
        let e_short = elliptic_j_series(point, 10).unwrap();
        let e_long = elliptic_j_series(point, 20).unwrap();
        for n in 0..=10 {
            assert_eq!(e_short.coeff(n), e_long.coeff(n));
        }
    }
}

#[test]
fn scaled_e4_rule_breaks_q_consistency() {
    let faults = FaultInjection::none().with_scaled_rule(1, Rational::new(3, 4));
    let res = run_suite("ramanujan-q-consistency", &faults).unwrap();
    assert!(!res.passed);
    assert!(res.detail.starts_with("D E4"), "{}", res.detail);
}

#[test]
fn nonzero_e2_star_breaks_elliptic_suite() {
    let spec = FaultInjection::none().point_spec(PointKind::Square).unwrap();
    let faults = FaultInjection::none().with_hat(PointKind::Square, 0, Rational::one());
    assert!(spec.hat_values[0].is_zero());
    let res = run_suite("elliptic-expansion", &faults).unwrap();
    assert!(!res.passed, "{}", res.line());
}

#[test]
fn square_coefficient_fault_is_localized() {
    let faults = FaultInjection::none().with_elliptic_offset(PointKind::Square, 6, Rational::new(1, 5));
    let rep = run_verify_with(PointKind::Square, 24, &faults).unwrap();
    let m = rep.first_mismatch.unwrap();
    assert_eq!(m.degree, 6);
    assert_eq!(m.rhs, Rational::from(851968));
    assert_eq!(&m.lhs - &m.rhs, Rational::new(1, 5));
}

#[test]
fn clean_suites_all_pass() {
    for name in ["series-ring-laws", "leibniz", "homogeneity", "calibration", "conjecture"] {
        let res = run_suite(name, &FaultInjection::none()).unwrap();
        assert!(res.passed, "{}", res.line());
    }
}
