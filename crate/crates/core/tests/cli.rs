use std::process::Command;

use foliate::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_REFUSAL};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, Value, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("foliate").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, json, text, String::from_utf8(err).unwrap())
}

#[test]
fn ispower_monomial() {
    let (code, r, _, err) = invoke(&["ispower", "-P", "z1^2*z2^4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["command"], "ispower");
    assert_eq!(r["result"]["rho"], 2);
    assert_eq!(r["result"]["theorem_hypothesis"], false);
    assert!(r["result"]["certificate"]["residual"].as_f64().unwrap() <= 1e-9);
    assert!(err.contains("rho = 2"));
}

#[test]
fn ispower_unit_is_infinite() {
    let (code, r, _, _) = invoke(&["ispower", "-P", "5 + z1*z2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["rho"], "infinite");
}

#[test]
fn decompose_found_and_refused() {
    let (code, r, _, _) = invoke(&["decompose", "-f", "z1^2*z2^2+3*z1*z2", "-P", "z1*z2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["outcome"], "Found");
    assert_eq!(r["result"]["h"], "X^2 + 3*X");
    assert_eq!(r["inputs"]["f"], "z1^2*z2^2 + 3*z1*z2");

    let (code, r, _, _) = invoke(&["decompose", "-f", "z1+z2", "-P", "z1*z2"]);
    assert_eq!(code, EXIT_REFUSAL);
    assert_eq!(r["result"]["outcome"], "NotDecomposable");
    assert_eq!(r["result"]["reason"], "DegreeMismatch");
}

#[test]
fn theorem_refutation_carries_growth() {
    let (code, r, _, _) = invoke(&["theorem", "-f", "z1+z2", "-P", "z1*z2", "--seed", "7"]);
    assert_eq!(code, EXIT_REFUSAL);
    assert_eq!(r["seed"], 7);
    let v = &r["result"];
    assert_eq!(v["consistent"], true);
    assert_eq!(v["exact"]["outcome"], "NotDecomposable");
    let growth: Vec<f64> = v["growth"]["max_abs_f"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!(growth.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn theorem_hypothesis_violation() {
    let (code, r, _, _) = invoke(&["theorem", "-f", "z1", "-P", "z1^2"]);
    assert_eq!(code, EXIT_REFUSAL);
    assert_eq!(r["result"]["rho"], 2);
}

#[test]
fn input_errors_exit_two_with_spans() {
    let (code, r, _, err) = invoke(&["ispower", "-P", "z1^(-1)"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(r["result"]["error"]["kind"], "NegativeExponent");
    assert_eq!(r["result"]["error"]["span"]["start"], 3);
    assert!(err.contains("negative exponent"));

    let (code, r, _, _) = invoke(&["decompose", "-f", "z3 + 1", "-P", "z1"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(r["result"]["error"]["kind"], "UnknownVariable");

    let (code, _, _, _) = invoke(&["growth", "-f", "z1", "-P", "z1*z2", "-c", "z1"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _, _) = invoke(&[
        "growth", "-f", "z1", "-P", "z1*z2", "-c", "1", "--radii", "10,1",
    ]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _, _) = invoke(&["irreducible", "-P", "0", "-n", "2"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, text, _) = invoke(&["nonsense"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(text.is_empty());
}

#[test]
fn irreducible_verdicts() {
    let (code, r, _, _) = invoke(&["irreducible", "-P", "z1^2", "-n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["verdict"], "Reducible");
    assert_eq!(r["result"]["witness"][0], "C - z1");

    let (_, r, _, _) = invoke(&["irreducible", "-P", "z1*z2", "-n", "3"]);
    assert_eq!(r["result"]["verdict"], "IrreducibleCertified");

    let (_, r, _, _) = invoke(&["irreducible", "-P", "z1^2+z1^3", "-n", "2", "--bound", "4"]);
    assert_eq!(r["result"]["verdict"], "Unknown");
    assert_eq!(r["result"]["searched_degree_bound"], 4);
}

#[test]
fn certificate_refusal_and_success() {
    let (code, _, _, _) = invoke(&["certificate", "-P", "z1*z2", "-m", "2"]);
    assert_eq!(code, EXIT_REFUSAL);
    let (code, r, _, _) = invoke(&["certificate", "-P", "z1^2+z1^3", "-m", "2", "-N", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["truncation_order"], 6);
}

#[test]
fn growth_on_the_hyperbola() {
    let (code, r, _, _) = invoke(&["growth", "-f", "z1+z2", "-P", "z1*z2", "-c", "1"]);
    assert_eq!(code, EXIT_OK);
    let got: Vec<f64> = r["result"]["max_abs_f"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (g, want) in got.iter().zip([2.0, 10.1, 100.01, 1000.001]) {
        assert!((g - want).abs() <= 1e-9 * want);
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    for args in [
        &[
            "leaves",
            "-f",
            "z1^2*z2^2+3*z1*z2",
            "-P",
            "z1*z2",
            "--seed",
            "42",
        ][..],
        &["theorem", "-f", "z2", "-P", "z1*z2+z2^3", "--seed", "3"][..],
    ] {
        let (_, _, a, _) = invoke(args);
        let (_, _, b, _) = invoke(args);
        assert_eq!(a, b);
    }
}

#[test]
fn report_inputs_reparse() {
    let (_, r, _, _) = invoke(&["decompose", "-f", "(z1 + i*z2)^3 - 1/2", "-P", "z1 + i*z2"]);
    for key in ["f", "P"] {
        let canonical = r["inputs"][key].as_str().unwrap();
        let p = foliate::cli::parse_polynomial(canonical).unwrap();
        assert_eq!(p.to_string(), canonical);
    }
}

#[test]
fn binary_end_to_end() {
    let out = Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args([
            "leaves", "-f", "7", "-P", "z1", "--levels", "3", "--seed", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["constant_on_leaves"], true);
    assert_eq!(r["result"]["levels"].as_array().unwrap().len(), 3);
    assert!(!out.stderr.is_empty());
}
