//! Command-line front end: one JSON report on stdout, a summary on stderr.
//!
//! Exit codes: 0 success, 1 mathematical refusal, 2 input error, 3 numeric
//! failure.

mod parse;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Polynomial;
use crate::decompose::{decompose_exact, DecomposeError};
use crate::leaf::{
    self, growth_probe, leaf_spread_report, theorem_check, Grid, LeafError, TheoremConfig,
};
use crate::numeric::ComplexF;
use crate::power::{
    cn_minus_p_status, is_theorem_hypothesis, power_certificate, power_order, PowerError,
    PowerReport, Rho, SeriesCertificate, DEFAULT_TRUNCATION,
};

pub use parse::{
    parse_poly, parse_polynomial, Expr, ExprKind, ParseError, ParsedExpr, Span, Var, DEGREE_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "foliate",
    version,
    about = "Polynomials constant on the level curves of P"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Power order of P in the power series ring.
    Ispower {
        #[arg(short = 'P')]
        p: String,
    },
    /// Truncated series m-th root of P.
    Certificate {
        #[arg(short = 'P')]
        p: String,
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'N', default_value_t = DEFAULT_TRUNCATION)]
        n: u32,
    },
    /// Irreducibility of C^n - P.
    Irreducible {
        #[arg(short = 'P')]
        p: String,
        #[arg(short = 'n')]
        n: u32,
        /// Degree bound for witness factors; defaults to the degree of P.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Exact h with f = h(P).
    Decompose {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'P')]
        p: String,
    },
    /// Relative spread of f on random generic leaves.
    Leaves {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'P')]
        p: String,
        #[arg(long, default_value_t = leaf::DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Max |f| on the leaf P = c at growing radii.
    Growth {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'P')]
        p: String,
        #[arg(short = 'c', allow_hyphen_values = true)]
        c: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 10.0, 100.0, 1000.0])]
        radii: Vec<f64>,
    },
    /// Exact decomposition against leaf constancy.
    Theorem {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'P')]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    /// Inputs in canonical text form.
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

struct Outcome {
    code: i32,
    result: Value,
    summary: String,
}

struct Ctx {
    inputs: BTreeMap<String, String>,
    diagnostics: Vec<String>,
}

/// Input failure carrying its JSON payload.
struct Refused(Outcome);

impl Ctx {
    fn poly(&mut self, name: &str, text: &str) -> Result<Polynomial, Refused> {
        match parse_polynomial(text) {
            Ok(p) => {
                self.inputs.insert(name.to_string(), p.to_string());
                Ok(p)
            }
            Err(e) => {
                self.inputs.insert(name.to_string(), text.to_string());
                Err(Refused(Outcome {
                    code: EXIT_INPUT,
                    summary: format!("input {name}: {e}"),
                    result: json!({ "error": e, "input": name }),
                }))
            }
        }
    }

    fn complex(&mut self, name: &str, text: &str) -> Result<ComplexF, Refused> {
        let p = self.poly(name, text)?;
        if !p.is_constant() {
            return Err(input_error(format!(
                "input {name} must be a constant, got {p}"
            )));
        }
        Ok(p.constant_term().to_complex())
    }
}

fn input_error(message: String) -> Refused {
    Refused(Outcome {
        code: EXIT_INPUT,
        result: json!({ "error": { "kind": "InvalidArgument", "message": message.clone() } }),
        summary: message,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn power_error(e: PowerError) -> Outcome {
    let code = match e {
        PowerError::ZeroPolynomial | PowerError::NotAPower { .. } => EXIT_REFUSAL,
        PowerError::InvalidArgument(_) => EXIT_INPUT,
        PowerError::CertificateFailed { .. } | PowerError::Numeric(_) => EXIT_NUMERIC,
    };
    Outcome {
        code,
        summary: e.to_string(),
        result: json!({ "error": e.to_string() }),
    }
}

fn leaf_error(e: LeafError) -> Outcome {
    let code = match e {
        LeafError::ConstantP | LeafError::HypothesisViolated { .. } => EXIT_REFUSAL,
        LeafError::EmptyLeafSample { .. } | LeafError::Numeric(_) => EXIT_NUMERIC,
    };
    let mut result = json!({ "error": e.to_string() });
    if let LeafError::HypothesisViolated { rho } = e {
        result["rho"] = to_value(&rho);
    }
    Outcome {
        code,
        summary: e.to_string(),
        result,
    }
}

#[derive(Serialize)]
struct IsPowerResult {
    #[serde(flatten)]
    report: PowerReport,
    theorem_hypothesis: bool,
    /// Series root of order `rho`, when `rho` is finite and at least 2.
    certificate: Option<SeriesCertificate>,
}

fn dispatch(command: Command, ctx: &mut Ctx, seed: &mut Option<u64>) -> Result<Outcome, Refused> {
    Ok(match command {
        Command::Ispower { p } => {
            let p = ctx.poly("P", &p)?;
            let report = power_order(&p);
            let certificate = match report.rho {
                Rho::Finite(r) if r >= 2 => match power_certificate(&p, r, DEFAULT_TRUNCATION) {
                    Ok(c) => Some(c),
                    Err(e) => {
                        ctx.diagnostics.push(format!("certificate: {e}"));
                        None
                    }
                },
                _ => None,
            };
            let summary = format!("rho = {}", report.rho);
            let result = IsPowerResult {
                theorem_hypothesis: is_theorem_hypothesis(&p),
                report,
                certificate,
            };
            Outcome {
                code: EXIT_OK,
                result: to_value(&result),
                summary,
            }
        }
        Command::Certificate { p, m, n } => {
            let p = ctx.poly("P", &p)?;
            ctx.inputs.insert("m".into(), m.to_string());
            ctx.inputs.insert("N".into(), n.to_string());
            match power_certificate(&p, m, n) {
                Ok(c) => Outcome {
                    code: EXIT_OK,
                    summary: format!(
                        "certified {m}-th root through degree {n}, residual {:e}",
                        c.residual
                    ),
                    result: to_value(&c),
                },
                Err(e) => power_error(e),
            }
        }
        Command::Irreducible { p, n, bound } => {
            let p = ctx.poly("P", &p)?;
            let bound = bound.unwrap_or_else(|| p.total_degree().unwrap_or(0));
            ctx.inputs.insert("n".into(), n.to_string());
            ctx.inputs.insert("bound".into(), bound.to_string());
            match cn_minus_p_status(&p, n, bound) {
                Ok(status) => Outcome {
                    code: EXIT_OK,
                    summary: format!(
                        "C^{n} - P: {}",
                        to_value(&status)["verdict"].as_str().unwrap_or("?")
                    ),
                    result: to_value(&status),
                },
                Err(PowerError::ZeroPolynomial) => {
                    return Err(input_error("P must be nonzero".into()))
                }
                Err(e) => power_error(e),
            }
        }
        Command::Decompose { f, p } => {
            let f = ctx.poly("f", &f)?;
            let p = ctx.poly("P", &p)?;
            match decompose_exact(&f, &p) {
                Ok(r) => Outcome {
                    code: if r.is_found() { EXIT_OK } else { EXIT_REFUSAL },
                    summary: match r.h() {
                        Some(h) => format!("f = h(P) with h = {h}"),
                        None => "f is not a polynomial in P".into(),
                    },
                    result: to_value(&r),
                },
                Err(e @ DecomposeError::ConstantP)
                | Err(e @ DecomposeError::LeafSamplingFailed { .. }) => Outcome {
                    code: EXIT_REFUSAL,
                    summary: e.to_string(),
                    result: json!({ "error": e.to_string() }),
                },
            }
        }
        Command::Leaves {
            f,
            p,
            levels,
            seed: s,
        } => {
            let f = ctx.poly("f", &f)?;
            let p = ctx.poly("P", &p)?;
            ctx.inputs.insert("levels".into(), levels.to_string());
            *seed = Some(s);
            let cs = leaf::generic_levels(s, levels);
            match leaf_spread_report(&f, &p, &cs, &Grid::default()) {
                Ok(spreads) => {
                    let failed = spreads
                        .iter()
                        .filter(|l| l.relative_spread.is_none())
                        .count();
                    if failed > 0 {
                        ctx.diagnostics
                            .push(format!("{failed} level(s) could not be sampled"));
                    }
                    let worst = spreads
                        .iter()
                        .filter_map(|l| l.relative_spread)
                        .fold(0.0, f64::max);
                    let constant = failed == 0 && worst <= leaf::SPREAD_TOL;
                    Outcome {
                        code: EXIT_OK,
                        summary: format!("worst relative spread {worst:e} over {levels} levels"),
                        result: json!({
                            "spread_tol": leaf::SPREAD_TOL,
                            "constant_on_leaves": constant,
                            "levels": to_value(&spreads),
                        }),
                    }
                }
                Err(e) => leaf_error(e),
            }
        }
        Command::Growth { f, p, c, radii } => {
            let f = ctx.poly("f", &f)?;
            let p = ctx.poly("P", &p)?;
            let level = ctx.complex("c", &c)?;
            if radii.is_empty()
                || radii.iter().any(|r| !(r.is_finite() && *r > 0.0))
                || radii.windows(2).any(|w| w[1] <= w[0])
            {
                return Err(input_error(
                    "radii must be positive and strictly increasing".into(),
                ));
            }
            ctx.inputs.insert(
                "radii".into(),
                radii
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            );
            match growth_probe(&f, &p, level, &radii) {
                Ok(t) => Outcome {
                    code: EXIT_OK,
                    summary: format!(
                        "growth by 2x per decade: {}{}",
                        t.grows_by_factor_per_decade(2.0),
                        if t.overflowed { " (overflowed)" } else { "" }
                    ),
                    result: to_value(&t),
                },
                Err(e) => leaf_error(e),
            }
        }
        Command::Theorem { f, p, seed: s } => {
            let f = ctx.poly("f", &f)?;
            let p = ctx.poly("P", &p)?;
            *seed = Some(s);
            let config = TheoremConfig {
                seed: s,
                ..TheoremConfig::default()
            };
            match theorem_check(&f, &p, &config) {
                Ok(v) => {
                    let code = match (v.consistent, v.exact.is_found()) {
                        (false, _) => EXIT_NUMERIC,
                        (true, true) => EXIT_OK,
                        (true, false) => EXIT_REFUSAL,
                    };
                    Outcome {
                        code,
                        summary: format!(
                            "consistent = {}, {}",
                            v.consistent,
                            if v.exact.is_found() {
                                "Found"
                            } else {
                                "NotDecomposable"
                            }
                        ),
                        result: to_value(&v),
                    }
                }
                Err(e) => leaf_error(e),
            }
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ispower { .. } => "ispower",
        Command::Certificate { .. } => "certificate",
        Command::Irreducible { .. } => "irreducible",
        Command::Decompose { .. } => "decompose",
        Command::Leaves { .. } => "leaves",
        Command::Growth { .. } => "growth",
        Command::Theorem { .. } => "theorem",
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let mut ctx = Ctx {
        inputs: BTreeMap::new(),
        diagnostics: Vec::new(),
    };
    let mut seed = None;
    let outcome = dispatch(cli.command, &mut ctx, &mut seed).unwrap_or_else(|Refused(o)| o);
    let report = Report {
        command: name.to_string(),
        inputs: ctx.inputs,
        result: outcome.result,
        diagnostics: ctx.diagnostics,
        seed,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let _ = writeln!(out, "{json}");
    let _ = writeln!(err, "{name}: {}", outcome.summary);
    outcome.code
}
