use foliate_web::{decompose, ispower, leaves, MAX_LEVELS};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn ispower_reports_rho() {
    let v = parse(ispower("z1^2*z2^4"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["rho"], 2);
    assert_eq!(v["theorem_hypothesis"], false);
    assert_eq!(parse(ispower("3 + z1"))["rho"], "infinite");
}

#[test]
fn parse_errors_are_values() {
    let v = parse(ispower("z1^(-1)"));
    assert_eq!(v["ok"], false);
    assert_eq!(v["span"]["start"], 3);
    let v = parse(decompose("z1", "z3"));
    assert_eq!(v["input"], "P");
}

#[test]
fn decompose_round() {
    let v = parse(decompose("z1^2*z2^2+3*z1*z2", "z1*z2"));
    assert_eq!(v["result"]["h"], "X^2 + 3*X");
    let v = parse(decompose("z1", "7"));
    assert_eq!(v["ok"], false);
}

#[test]
fn leaves_separate_constant_and_not() {
    let v = parse(leaves("z1^2*z2^2+3*z1*z2", "z1*z2", 4, 9));
    assert_eq!(v["constant_on_leaves"], true);
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
    let v = parse(leaves("z1+z2", "z1*z2", 1000, 9));
    assert_eq!(v["constant_on_leaves"], false);
    assert_eq!(v["levels"].as_array().unwrap().len(), MAX_LEVELS as usize);
    assert_eq!(leaves("z2", "z1*z2", 3, 1), leaves("z2", "z1*z2", 3, 1));
}
