use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lg-moonshine")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_both_points_exits_zero() {
    let (code, out, _) = run(&["verify", "--point", "both", "--order", "24"]);
    assert_eq!(code, 0);
    assert!(out.contains("hexagonal point, order 24: verified"));
    assert!(out.contains("square point, order 24: verified"));
}

#[test]
fn verify_json_is_an_array_of_reports() {
    let (code, out, _) = run(&["verify", "--point", "square", "--order", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["point"], "square");
    assert_eq!(reports[0]["verified"], true);
}

#[test]
fn verify_csv_rows() {
    let (code, out, _) = run(&["verify", "--point", "square", "--order", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "point,degree,composed,closed_form,match\n\
         square,0,1728/1,1728/1,true\n\
         square,2,20736/1,20736/1,true\n\
         square,4,147456/1,147456/1,true\n"
    );
}

#[test]
fn perturbed_coefficient_exits_one() {
    let (code, out, _) = run(&["verify", "--point", "hexagonal", "--perturb-elliptic", "9"]);
    assert_eq!(code, 1);
    assert!(out.contains("first mismatch at t^9: composed 99145/1 vs closed form 99144/1"), "{out}");
}

#[test]
fn expand_elliptic_csv() {
    let (code, out, _) = run(&["expand", "--series", "elliptic", "--point", "hexagonal", "--order", "12", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("9,1920024,35\n12,-1736613,35\n"), "{out}");
}

#[test]
fn expand_flat_cubic_csv() {
    let (code, out, _) = run(&["expand", "--series", "flat", "--kind", "cubic", "--order", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "degree,numerator,denominator\n1,1,1\n4,-1,6\n");
}

#[test]
fn expand_j_qexp_table() {
    let (code, out, _) = run(&["expand", "--series", "j-qexp", "--order", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q^-1: 1\n q^0: 744\n q^1: 196884\nO(q^2)\n");
}

#[test]
fn unknown_series_is_a_usage_error() {
    let (code, out, err) = run(&["expand", "--series", "bogus"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bogus"));
}

#[test]
fn order_below_minimum_is_a_usage_error() {
    let (code, _, err) = run(&["verify", "--point", "hexagonal", "--order", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid order 1"), "{err}");
}

#[test]
fn missing_point_for_elliptic_is_reported() {
    let (code, _, err) = run(&["expand", "--series", "elliptic"]);
    assert_eq!(code, 2);
    assert!(err.contains("--point"), "{err}");
}

#[test]
fn selftest_passes_and_fault_fails() {
    let (code, out, _) = run(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("all 13 suites passed\n"));

    let (code, out, _) = run(&["selftest", "--fault", "rule-b"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL ramanujan-q-consistency"), "{out}");
}
