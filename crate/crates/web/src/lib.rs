//! Browser bindings. Every export takes expression strings and returns a
//! JSON document; parse errors come back as `{"ok": false, "error": ...}`.

use foliate::cli::parse_polynomial;
use foliate::decompose::decompose_exact;
use foliate::leaf::{generic_levels, leaf_spread_report, Grid, SPREAD_TOL};
use foliate::power::{is_theorem_hypothesis, power_order};
use foliate::Polynomial;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Upper bound on levels a page may request.
pub const MAX_LEVELS: u32 = 32;

fn parse(name: &str, text: &str) -> Result<Polynomial, Value> {
    parse_polynomial(text).map_err(
        |e| json!({ "ok": false, "input": name, "error": e.to_string(), "span": e.span() }),
    )
}

pub fn ispower_value(p: &str) -> Value {
    let p = match parse("P", p) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let report = power_order(&p);
    json!({
        "ok": true,
        "P": p.to_string(),
        "rho": report.rho,
        "vanishing_exponents": report.vanishing_exponents,
        "decomposition": report.decomposition,
        "theorem_hypothesis": is_theorem_hypothesis(&p),
    })
}

pub fn decompose_value(f: &str, p: &str) -> Value {
    let (f, p) = match (parse("f", f), parse("P", p)) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    match decompose_exact(&f, &p) {
        Ok(r) => json!({ "ok": true, "result": r }),
        Err(e) => json!({ "ok": false, "error": e.to_string() }),
    }
}

pub fn leaves_value(f: &str, p: &str, levels: u32, seed: u32) -> Value {
    let (f, p) = match (parse("f", f), parse("P", p)) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let cs = generic_levels(seed as u64, levels.clamp(1, MAX_LEVELS) as usize);
    match leaf_spread_report(&f, &p, &cs, &Grid::default()) {
        Ok(spreads) => {
            let constant = spreads
                .iter()
                .all(|l| l.relative_spread.is_some_and(|s| s <= SPREAD_TOL));
            json!({ "ok": true, "seed": seed, "spread_tol": SPREAD_TOL, "constant_on_leaves": constant, "levels": spreads })
        }
        Err(e) => json!({ "ok": false, "error": e.to_string() }),
    }
}

#[wasm_bindgen]
pub fn ispower(p: &str) -> String {
    ispower_value(p).to_string()
}

#[wasm_bindgen]
pub fn decompose(f: &str, p: &str) -> String {
    decompose_value(f, p).to_string()
}

#[wasm_bindgen]
pub fn leaves(f: &str, p: &str, levels: u32, seed: u32) -> String {
    leaves_value(f, p, levels, seed).to_string()
}
