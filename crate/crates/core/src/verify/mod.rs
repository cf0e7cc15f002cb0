//! Acceptance suites: property and oracle checks over generated corpora.

mod algebraic;
mod arithmetic;
pub mod corpus;
pub mod oracle;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairing::DEFAULT_SHIFT_BOUND;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Tolerance for real-valued identities.
    pub tol: f64,
    /// Tolerance for closed forms against quadrature.
    pub quad_tol: f64,
    pub shift_bound: i64,
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tol: 1e-6, quad_tol: 1e-9, shift_bound: DEFAULT_SHIFT_BOUND, timing: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: u32,
    pub name: &'static str,
    pub criterion: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub skipped: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub within_budget: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

const MAX_LISTED: usize = 12;

/// Accumulates check outcomes for one suite.
#[derive(Default)]
pub(crate) struct Recorder {
    checks: usize,
    skipped: usize,
    failure_count: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Recorder {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    /// Records an error from the code under test as a failure.
    pub fn ok<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", ctx()));
                None
            }
        }
    }

    pub fn require_count(&mut self, label: &str, got: usize, min: usize) {
        self.check(got >= min, || format!("only {got} {label}, need at least {min}"));
    }
}

pub struct Suite {
    pub id: u32,
    pub name: &'static str,
    pub criterion: &'static str,
    pub budget: Duration,
    run: fn(&VerifyConfig, &mut Recorder),
}

pub fn suites() -> Vec<Suite> {
    let s = |id, name, criterion, secs, run| Suite { id, name, criterion, budget: Duration::from_secs(secs), run };
    vec![
        s(1, "symmetry", "pair(A,b) = pair(b,A) on both sides", 30, algebraic::symmetry),
        s(2, "bilinearity", "additivity of pair, residue and correspondence", 120, algebraic::bilinearity),
        s(3, "principality", "principal divisors map to degree zero", 120, algebraic::principality),
        s(4, "residue-correspondence", "two residue routes agree at degree-one places", 120, algebraic::residue_correspondence),
        s(5, "different", "pairing equals the different divisor for degree-one primes", 120, algebraic::different),
        s(6, "support", "support criterion for degree-one residues", 120, algebraic::support),
        s(7, "self-pairing", "self-pairing plus image of dx has degree zero", 120, algebraic::self_pairing),
        s(8, "charts", "shift independence and numeric Bezout counts", 120, algebraic::charts),
        s(9, "arakelov", "product formula and archimedean closed forms", 60, arithmetic::arakelov),
        s(10, "rsp", "residue scalar product symmetry, vanishing, class invariance", 120, arithmetic::rsp),
        s(11, "explorer", "explorer completes, is reproducible, reports a minimum", 300, arithmetic::explorer),
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    suites().iter().map(|s| s.name).collect()
}

fn execute(s: &Suite, cfg: &VerifyConfig) -> SuiteReport {
    let mut rec = Recorder::default();
    let start = Instant::now();
    (s.run)(cfg, &mut rec);
    let elapsed = start.elapsed();
    let within_budget = elapsed <= s.budget;
    if !within_budget {
        rec.note(format!("exceeded the {} s budget", s.budget.as_secs()));
    }
    SuiteReport {
        id: s.id,
        name: s.name,
        criterion: s.criterion,
        passed: rec.failure_count == 0 && within_budget && rec.checks > 0,
        checks: rec.checks,
        skipped: rec.skipped,
        failure_count: rec.failure_count,
        failures: rec.failures,
        notes: rec.notes,
        within_budget,
        seconds: cfg.timing.then_some(elapsed.as_secs_f64()),
    }
}

/// Runs the suite with the given name or number.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let all = suites();
    let s = all
        .iter()
        .find(|s| s.name == name || s.id.to_string() == name)
        .ok_or_else(|| Error::Invalid(format!("unknown suite {name}; known: {}", suite_names().join(", "))))?;
    Ok(execute(s, cfg))
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    suites().iter().map(|s| execute(s, cfg)).collect()
}

impl SuiteReport {
    /// One-line summary: `PASS [1] symmetry: ... (N checks)`.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{status} [{}] {}: {} ({} checks", self.id, self.name, self.criterion, self.checks);
        if self.skipped > 0 {
            s += &format!(", {} skipped", self.skipped);
        }
        if self.failure_count > 0 {
            s += &format!(", {} failed", self.failure_count);
        }
        s.push(')');
        if let Some(t) = self.seconds {
            s += &format!(" in {t:.2} s");
        }
        s
    }
}
