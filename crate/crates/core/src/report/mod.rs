//! Verification reports: the registry of checks behind `smkdv verify`, a
//! parallel runner, and golden dumps of the derived expressions.

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::Flow;
use crate::backlund::{derive_bt, BacklundError, BtSystem};
use crate::charges::Charge;
use crate::expr::Expr;
use crate::numeric::OracleReport;

mod checks;
mod golden;

pub use checks::registry;
pub use golden::{golden_entries, read_golden, write_golden};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot parse order {0:?}: expected n/2 or a whole number")]
    BadOrder(String),
    #[error("unknown charge {0:?}: expected P or E")]
    BadCharge(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T> = std::result::Result<T, ReportError>;

pub type CheckError = Box<dyn std::error::Error + Send + Sync>;
pub type CheckResult = std::result::Result<Outcome, CheckError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    ZeroCurvature,
    Backlund,
    Superspace,
    Charges,
    Defects,
    Numeric,
    All,
}

impl Suite {
    pub fn label(self) -> &'static str {
        match self {
            Suite::ZeroCurvature => "zero-curvature",
            Suite::Backlund => "backlund",
            Suite::Superspace => "superspace",
            Suite::Charges => "charges",
            Suite::Defects => "defects",
            Suite::Numeric => "numeric",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// Surviving terms over all residuals (zero for a passing symbolic check).
    pub terms: usize,
    pub sample: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerificationReport {
    pub check_id: String,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub status: Status,
    pub residual: ResidualSummary,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Result of one check before timing is attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub residual: ResidualSummary,
}

const SAMPLE: usize = 3;

fn first_term(e: &Expr) -> String {
    e.terms().next().map(|(m, c)| Expr::term(c.clone(), m.clone()).to_string()).unwrap_or_default()
}

impl Outcome {
    /// Passes when every residual vanishes.
    pub fn zero(items: Vec<(String, Expr)>) -> Outcome {
        let bad: Vec<_> = items.iter().filter(|(_, e)| !e.is_zero()).collect();
        Outcome {
            pass: bad.is_empty(),
            residual: ResidualSummary {
                terms: bad.iter().map(|(_, e)| e.len()).sum(),
                sample: bad.iter().take(SAMPLE).map(|(l, e)| format!("{l}: {}", first_term(e))).collect(),
            },
        }
    }

    /// Passes when some residual survives: a deliberately broken input is caught.
    pub fn nonzero(items: Vec<(String, Expr)>) -> Outcome {
        let mut out = Outcome::zero(items);
        out.pass = !out.pass;
        if !out.pass {
            out.residual.sample.push("broken input went undetected".into());
        }
        out
    }

    pub fn numeric(pass: bool, sample: Vec<String>) -> Outcome {
        Outcome { pass, residual: ResidualSummary { terms: 0, sample } }
    }
}

/// Knobs shared by every check.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    /// Generated charge `I(-order/2)` to verify in addition to the tables.
    pub order: Option<i32>,
    pub oracle_seeds: usize,
    pub random_superfields: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 7, order: None, oracle_seeds: 100, random_superfields: 1000 }
    }
}

/// `3/2` or `3` (meaning `6/2`).
pub fn parse_order(s: &str) -> Result<i32> {
    let bad = || ReportError::BadOrder(s.to_string());
    let n = match s.trim().split_once('/') {
        Some((n, "2")) => n.trim().parse::<i32>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => 2 * s.trim().parse::<i32>().map_err(|_| bad())?,
    };
    if n < 1 {
        return Err(bad());
    }
    Ok(n)
}

pub fn parse_charge(s: &str) -> Result<Charge> {
    match s {
        "P" | "p" => Ok(Charge::Momentum),
        "E" | "e" => Ok(Charge::Energy),
        _ => Err(ReportError::BadCharge(s.to_string())),
    }
}

/// Shared, lazily derived state.
pub struct Context {
    pub options: Options,
    bts: [OnceLock<std::result::Result<BtSystem, String>>; 3],
    oracle: OnceLock<OracleReport>,
}

impl Context {
    pub fn new(options: Options) -> Context {
        Context { options, bts: Default::default(), oracle: OnceLock::new() }
    }

    pub fn bt(&self, flow: Flow) -> std::result::Result<&BtSystem, CheckError> {
        let cell = match flow {
            Flow::T1 => &self.bts[0],
            Flow::T3 => &self.bts[1],
            Flow::T5 => &self.bts[2],
            other => return Err(BacklundError::UnsupportedFlow(other).into()),
        };
        cell.get_or_init(|| derive_bt(flow).map_err(|e| e.to_string())).as_ref().map_err(|e| e.clone().into())
    }

    /// Oracle campaign of the last `numeric` run, if any.
    pub fn oracle_report(&self) -> Option<&OracleReport> {
        self.oracle.get()
    }

    fn store_oracle(&self, r: OracleReport) {
        let _ = self.oracle.set(r);
    }
}

type Runner = Box<dyn Fn(&Context) -> CheckResult + Send + Sync>;

pub struct Check {
    pub id: String,
    pub anchor: String,
    pub suite: Suite,
    pub flow: Option<Flow>,
    pub charge: Option<Charge>,
    /// Acceptance criterion the check belongs to, if any.
    pub criterion: Option<u8>,
    run: Runner,
}

impl Check {
    pub fn run(&self, ctx: &Context) -> VerificationReport {
        let start = Instant::now();
        let outcome = (self.run)(ctx).unwrap_or_else(|e| Outcome::numeric(false, vec![format!("error: {e}")]));
        VerificationReport {
            check_id: self.id.clone(),
            anchor: self.anchor.clone(),
            criterion: self.criterion,
            status: if outcome.pass { Status::Pass } else { Status::Fail },
            residual: outcome.residual,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("suite", &self.suite).finish()
    }
}

/// Which checks to run. With a flow or charge set, checks not tagged with
/// it are skipped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Selection {
    pub suite: Suite,
    pub flow: Option<Flow>,
    pub charge: Option<Charge>,
}

impl Selection {
    pub fn suite(suite: Suite) -> Selection {
        Selection { suite, flow: None, charge: None }
    }

    pub fn matches(&self, c: &Check) -> bool {
        (self.suite == Suite::All || self.suite == c.suite)
            && self.flow.map_or(true, |f| c.flow == Some(f))
            && self.charge.map_or(true, |q| c.charge == Some(q))
    }
}

/// Runs the selected checks on up to `jobs` threads (all cores for `None`);
/// reports come back sorted by check id.
pub fn run_checks(sel: Selection, ctx: &Context, jobs: Option<usize>) -> Result<Vec<VerificationReport>> {
    let all = registry(&ctx.options);
    let chosen: Vec<&Check> = all.iter().filter(|c| sel.matches(c)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
    let mut reports: Vec<VerificationReport> = pool.install(|| chosen.par_iter().map(|c| c.run(ctx)).collect());
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

pub fn to_json(reports: &[VerificationReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

pub fn from_json(s: &str) -> Result<Vec<VerificationReport>> {
    Ok(serde_json::from_str(s)?)
}

/// Same reports with timing zeroed, for run-to-run comparison.
pub fn without_timing(reports: &[VerificationReport]) -> Vec<VerificationReport> {
    reports.iter().cloned().map(|r| VerificationReport { elapsed_ms: 0, ..r }).collect()
}

pub fn to_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag}  {:<40} {}  ({} ms)\n", r.check_id, r.anchor, r.elapsed_ms));
        if !r.passed() || r.residual.terms > 0 {
            out.push_str(&format!("      {} surviving terms\n", r.residual.terms));
        }
        for s in &r.residual.sample {
            out.push_str(&format!("      {s}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    out
}

