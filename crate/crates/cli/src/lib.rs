//! Batch front end: parses command lines, runs one operation and builds the
//! report printed as text or JSON.

pub mod args;
pub mod render;

use std::collections::BTreeMap;
use std::time::Instant;

use doublefield::arakelov::{arakelov_from_divisor, deg_kp_divisor, residue_scalar_product_bounded};
use doublefield::divisor::{principal_divisor, restrict_to_kp, DeltaElement, DivisorDelta, Place};
use doublefield::explore::explore_self_products;
use doublefield::pairing::{pair_bounded, self_pair_degree_one, Side};
use doublefield::parse::{parse_divisor, parse_fraction, parse_prime, parse_uplace};
use doublefield::residue::{correspondence, residue};
use doublefield::verify::{run_all, run_suite, VerifyConfig};
use doublefield::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, Command, Global};

pub const REPORT_VERSION: u32 = 1;

/// Bits of the floating-point format used by every numeric stage.
pub const WORKING_PRECISION: u32 = f64::MANTISSA_DIGITS;

#[derive(Debug, Serialize)]
pub struct Precision {
    pub requested: u32,
    pub used: u32,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: Vec<String>,
    pub inputs: BTreeMap<&'static str, String>,
    pub result: Value,
    pub tol: f64,
    pub precision: Precision,
    pub shift_bound: i64,
    pub assumed_irreducible: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

pub struct Outcome {
    pub report: Report,
    pub text: String,
    /// Set when a verification suite failed.
    pub failed: bool,
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Invalid(_)
        | Error::DegreeBound { .. }
        | Error::UncertifiedFactor(_)
        | Error::NotDegreeOne(_)
        | Error::EqualIsoms
        | Error::NotCoprime(_)
        | Error::CommonSupport(_) => 2,
        Error::NonGeneric(_) | Error::PointwiseUnavailable(_) | Error::ShiftExhausted(_) | Error::MoveFailure => 3,
        Error::PrecisionFailure(_) => 4,
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Invalid(e.to_string()))
}

fn element_text(e: &DeltaElement) -> String {
    let den = e.denominator();
    if den == doublefield::algebra::BPoly::one() {
        e.numerator().to_string()
    } else {
        format!("({})/({})", e.numerator(), den)
    }
}

struct Ctx<'a> {
    g: &'a Global,
    inputs: BTreeMap<&'static str, String>,
    assumed: Vec<String>,
    notes: Vec<String>,
}

impl Ctx<'_> {
    fn divisor(&mut self, key: &'static str, text: &str) -> Result<DivisorDelta> {
        let parsed = parse_divisor(text, self.g.assume_irreducible)?;
        self.assumed.extend(parsed.assumed);
        self.inputs.insert(key, parsed.divisor.to_string());
        Ok(parsed.divisor)
    }

    fn prime(&mut self, key: &'static str, text: &str) -> Result<Place> {
        let (p, assumed) = parse_prime(text, self.g.assume_irreducible)?;
        self.assumed.extend(assumed);
        self.inputs.insert(key, p.to_string());
        Ok(p)
    }

    fn side(&mut self, side: Side) {
        self.inputs.insert("side", format!("{side:?}"));
    }
}

/// Runs the parsed command; `command` is the argument list echoed in the report.
pub fn run(cli: &Cli, command: &[String]) -> Result<Outcome> {
    let start = Instant::now();
    let g = &cli.global;
    let mut cx = Ctx { g, inputs: BTreeMap::new(), assumed: Vec::new(), notes: Vec::new() };
    if g.precision > WORKING_PRECISION {
        cx.notes.push(format!("precision capped at {WORKING_PRECISION} bits (requested {})", g.precision));
    }
    let mut failed = false;
    let (result, text) = match &cli.command {
        Command::Divisor { expr } => {
            let (num, den) = parse_fraction(expr)?;
            let e = DeltaElement::from_fraction(&num, &den)?;
            cx.inputs.insert("expr", element_text(&e));
            let d = principal_divisor(&e);
            (to_value(&render::delta(&d))?, d.to_string())
        }
        Command::Residue { a, n } => {
            let a = cx.divisor("A", a)?;
            let n = cx.prime("n", n)?;
            let r = residue(&a, &n)?;
            (to_value(&render::unary(&r))?, r.to_string())
        }
        Command::Correspond { a, p } => {
            let a = cx.divisor("A", a)?;
            let p = parse_uplace(p)?;
            cx.inputs.insert("p", p.to_string());
            let r = correspondence(&a, &p)?;
            (to_value(&render::unary(&r))?, r.to_string())
        }
        Command::Pair { a, b, side } => {
            let a = cx.divisor("a", a)?;
            let b = cx.divisor("b", b)?;
            let side = Side::from(*side);
            cx.side(side);
            let r = pair_bounded(&a, &b, side, g.shift_bound)?;
            (to_value(&render::unary(&r))?, r.to_string())
        }
        Command::Selfpair { m, side } => {
            let m = cx.prime("m", m)?;
            let side = Side::from(*side);
            cx.side(side);
            let s = self_pair_degree_one(&m, side)?;
            let v = json!({
                "moving_element": element_text(&s.moving_element),
                "moved": render::delta(&s.moved),
                "value": render::unary(&s.value),
            });
            (v, s.value.to_string())
        }
        Command::ArakelovDeg { d } => {
            let d = cx.divisor("d", d)?;
            if let Some((p, _)) = d.iter().find(|(p, _)| !matches!(p, Place::KpUnary(_))) {
                return Err(Error::Invalid(format!("arakelov-deg takes a divisor of Q(y); {p} is not a place of Q(y)")));
            }
            let d = restrict_to_kp(&d);
            let lift = arakelov_from_divisor(&d)?;
            let deg = deg_kp_divisor(&d)?;
            let v = json!({ "divisor": render::unary(&d), "lift": lift.to_string(), "deg_kp": deg });
            (v, format!("{deg:.12}"))
        }
        Command::Rsp { a, b } => {
            let a = cx.divisor("a", a)?;
            let b = cx.divisor("b", b)?;
            let s = residue_scalar_product_bounded(&a, &b, g.shift_bound)?;
            let text = format!("{:.12}\n  bracket {:.12}\n  deg_Kp of the pairing {:.12}", s.value, s.bracket, s.pairing_degree);
            (to_value(&s)?, text)
        }
        Command::Explore { trials, max_deg, seed } => {
            let r = explore_self_products(*trials, *max_deg, *seed, g.shift_bound)?;
            let text = match (r.minimum, r.minimum_trial) {
                (Some(m), Some(t)) => format!(
                    "{} trials, minimum self-product {m:.9} at trial {t}, {} negative, {} failed",
                    r.trials,
                    r.negative_trials.len(),
                    r.failed_trials.len()
                ),
                _ => format!("{} trials, no self-product computed, {} failed", r.trials, r.failed_trials.len()),
            };
            (to_value(&r)?, text)
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig { tol: g.tol, shift_bound: g.shift_bound, timing: g.timing, ..VerifyConfig::default() };
            let reports = match suite {
                Some(name) => {
                    cx.inputs.insert("suite", name.clone());
                    vec![run_suite(name, &cfg)?]
                }
                None => run_all(&cfg),
            };
            failed = reports.iter().any(|r| !r.passed);
            let text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
            (json!({ "passed": !failed, "suites": reports }), text)
        }
    };
    let report = Report {
        version: REPORT_VERSION,
        command: command.to_vec(),
        inputs: cx.inputs,
        result,
        tol: g.tol,
        precision: Precision { requested: g.precision, used: WORKING_PRECISION },
        shift_bound: g.shift_bound,
        assumed_irreducible: cx.assumed,
        notes: cx.notes,
        seconds: g.timing.then(|| start.elapsed().as_secs_f64()),
    };
    Ok(Outcome { report, text, failed })
}
