//! Named checks that replay worked examples and test product/factor claims
//! over exhaustive or seeded families of small images.
//!
//! Every check is registered under a stable id and listed in the manifest
//! (`data/manifest.tsv`). A check either passes, fails with a serialized
//! counterexample, or runs out of budget. The budget counts instances: one
//! tick per object examined.

mod checks;
mod families;
mod open_problems;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::Search;

pub use families::InstanceFamily;
pub use open_problems::{search_open_problem, OpenProblemReport, OPEN_PROBLEMS};

/// Default instance budget per check.
pub const DEFAULT_CHECK_BUDGET: u64 = 20_000_000;

/// Node budget handed to each inner search.
pub(crate) const SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Replays one fixed object.
    Fixture,
    /// Quantifies over a whole finite family.
    Exhaustive,
    /// Samples the given number of instances from a seeded generator.
    Randomized(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    BudgetExceeded,
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub mode: Mode,
    pub instances: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Why a check stopped early.
#[derive(Debug)]
pub(crate) enum Stop {
    Budget,
    Counterexample(String),
    Internal(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Internal(e)
    }
}

pub(crate) type Checked = std::result::Result<(), Stop>;

/// Fails the running check with a formatted counterexample.
macro_rules! require {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::verifier::Stop::Counterexample(format!($($fmt)+)));
        }
    };
}
pub(crate) use require;

/// State threaded through a running check.
pub(crate) struct Ctx {
    budget: u64,
    instances: u64,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn new(budget: u64, seed: u64) -> Self {
        Ctx { budget, instances: 0, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Counts one instance, stopping when the budget is spent.
    pub fn tick(&mut self) -> Checked {
        if self.instances >= self.budget {
            return Err(Stop::Budget);
        }
        self.instances += 1;
        Ok(())
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Unwraps a search, turning an exhausted budget into a stop.
    pub fn settle<T>(&self, s: Search<T>) -> std::result::Result<Option<T>, Stop> {
        match s {
            Search::Found(t) => Ok(Some(t)),
            Search::Exhausted => Ok(None),
            Search::BudgetExceeded => Err(Stop::Budget),
        }
    }
}

pub(crate) struct CheckDef {
    pub id: &'static str,
    pub mode: Mode,
    pub run: fn(&mut Ctx) -> Checked,
}

fn registry() -> &'static [CheckDef] {
    checks::REGISTRY
}

/// Ids of every registered check, in report order.
pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// One manifest row: check id, mode, the acceptance criterion the check
/// belongs to (if any) and a short description of the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub id: String,
    pub mode: String,
    pub criterion: Option<u8>,
    pub claim: String,
}

const MANIFEST: &str = include_str!("../../data/manifest.tsv");

/// The manifest shipped with the crate.
pub fn manifest() -> Vec<ManifestEntry> {
    MANIFEST
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut cols = l.splitn(4, '\t');
            let mut next = || cols.next().unwrap_or("").trim().to_string();
            let (id, mode, criterion) = (next(), next(), next());
            ManifestEntry { id, mode, criterion: criterion.parse().ok(), claim: next() }
        })
        .collect()
}

fn seed_for(seed: u64, id: &str) -> u64 {
    // FNV-1a keeps per-check streams stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

fn execute(def: &CheckDef, budget: u64, seed: u64) -> CheckReport {
    let mut ctx = Ctx::new(budget, seed_for(seed, def.id));
    let result = (def.run)(&mut ctx);
    let (outcome, witness) = match result {
        Ok(()) => (Outcome::Pass, None),
        Err(Stop::Budget) => (Outcome::BudgetExceeded, None),
        Err(Stop::Counterexample(w)) => (Outcome::Fail, Some(w)),
        Err(Stop::Internal(e)) => (Outcome::Fail, Some(format!("internal error: {e}"))),
    };
    CheckReport { id: def.id.to_string(), mode: def.mode, instances: ctx.instances, outcome, witness }
}

/// Runs one check with seed 0.
pub fn run_check(id: &str, budget: u64) -> Result<CheckReport> {
    run_check_seeded(id, budget, 0)
}

pub fn run_check_seeded(id: &str, budget: u64, seed: u64) -> Result<CheckReport> {
    let def = registry().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    Ok(execute(def, budget, seed))
}

/// Runs every check in parallel; the report keeps registry order.
pub fn run_all(budget: u64, seed: u64) -> Vec<CheckReport> {
    registry().par_iter().map(|def| execute(def, budget, seed)).collect()
}

/// `id mode outcome instances=N [witness]`, one line per check.
pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let mode = match r.mode {
            Mode::Fixture => "fixture".to_string(),
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Randomized(n) => format!("randomized({n})"),
        };
        let outcome = match r.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::BudgetExceeded => "budget_exceeded",
        };
        let _ = write!(out, "{} {} {} instances={}", r.id, mode, outcome, r.instances);
        if let Some(w) = &r.witness {
            let _ = write!(out, " witness: {w}");
        }
        out.push('\n');
    }
    out
}

pub fn render_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_manifest() {
        let ids = check_ids();
        let listed: Vec<String> = manifest().into_iter().map(|e| e.id).collect();
        assert_eq!(ids, listed);
        let mut unique = ids.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), ids.len(), "duplicate check id");
        for (def, row) in registry().iter().zip(manifest()) {
            let mode = match def.mode {
                Mode::Fixture => "fixture",
                Mode::Exhaustive => "exhaustive",
                Mode::Randomized(_) => "randomized",
            };
            assert_eq!(mode, row.mode, "{}", def.id);
            assert!(!row.claim.is_empty(), "{}", def.id);
        }
    }

    #[test]
    fn unknown_and_zero_budget() {
        assert!(matches!(run_check("nope", 10), Err(Error::UnknownCheck(_))));
        let r = run_check("Ex-4.3", 0).unwrap();
        assert_eq!(r.outcome, Outcome::BudgetExceeded);
        assert_eq!(r.instances, 0);
    }
}
