//! Decision procedures for intuitionistic propositional logic.
//!
//! The implicational provers follow their rule listings literally: contexts
//! are sequences whose newest element is scanned first, and once a
//! reduction's guard succeeds the prover commits to it (a failing
//! continuation fails the whole goal instead of trying the next candidate).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::Formula;
use crate::lambda::LambdaTerm;

mod bad;
mod fullipc;
mod horn;
mod implicational;
mod oracle;
mod term;

pub use bad::{bad_prover_fp, bad_prover_random};
pub use fullipc::prove_full_ipc;
pub use horn::{prove_horn, prove_horn_clause};
pub use implicational::{prove_headfirst, prove_hudelmaier, prove_ljt, prove_merged};
pub use oracle::prove_oracle;
pub use term::prove_with_term;

/// Search counters, plus assertion counters when instrumentation is on.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct Stats {
    /// Calls of the recursive search procedure.
    pub nodes: u64,
    /// Largest formula size of any context element created.
    pub max_context_size: usize,
    pub invariant_checks: u64,
    pub invariant_violations: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub proved: bool,
    pub proof_term: Option<LambdaTerm>,
    pub stats: Stats,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Limits {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    /// Check per-prover space invariants on every context extension.
    pub instrument: bool,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            budget: 50_000_000,
            instrument: false,
        }
    }
}

impl Limits {
    pub fn instrumented() -> Limits {
        Limits {
            instrument: true,
            ..Limits::default()
        }
    }

    pub fn with_budget(budget: u64) -> Limits {
        Limits {
            budget,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProveError {
    #[error("formula is not implicational: {0}")]
    NotImplicational(String),
    #[error("step budget of {0} exhausted")]
    BudgetExceeded(u64),
}

/// Shared node counter and budget check.
#[derive(Debug)]
pub(crate) struct Meter {
    pub stats: Stats,
    budget: u64,
    pub instrument: bool,
}

impl Meter {
    pub fn new(limits: Limits) -> Meter {
        Meter {
            stats: Stats::default(),
            budget: limits.budget,
            instrument: limits.instrument,
        }
    }

    pub fn tick(&mut self) -> Result<(), ProveError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            Err(ProveError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    pub fn observe_size(&mut self, size: usize) {
        self.stats.max_context_size = self.stats.max_context_size.max(size);
    }

    pub fn check(&mut self, holds: bool) {
        if self.instrument {
            self.stats.invariant_checks += 1;
            if !holds {
                self.stats.invariant_violations += 1;
            }
        }
    }

    pub fn verdict(self, proved: bool) -> Verdict {
        Verdict {
            proved,
            proof_term: None,
            stats: self.stats,
        }
    }
}

pub(crate) fn require_implicational(f: &Formula) -> Result<(), ProveError> {
    if f.is_implicational() {
        Ok(())
    } else {
        Err(ProveError::NotImplicational(f.to_string()))
    }
}

/// Sequence without the element at `i`, order preserved.
pub(crate) fn without<T: Clone>(xs: &[T], i: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len());
    out.extend_from_slice(&xs[..i]);
    out.extend_from_slice(&xs[i + 1..]);
    out
}

/// Whether `x` occurs in `xs` other than at index `skip`; saves building
/// the reduced context when only membership is asked.
pub(crate) fn contains_except<T: PartialEq>(xs: &[T], skip: usize, x: &T) -> bool {
    xs.iter().enumerate().any(|(j, y)| j != skip && y == x)
}

/// `xs` without index `i` and with `x` as its newest element.
pub(crate) fn replaced<T: Clone>(xs: &[T], i: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len());
    out.extend_from_slice(&xs[..i]);
    out.extend_from_slice(&xs[i + 1..]);
    out.push(x);
    out
}

/// `xs` with `x` as its newest element.
pub(crate) fn with<T: Clone>(xs: &[T], x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    out.extend_from_slice(xs);
    out.push(x);
    out
}

/// Every prover, selectable by name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProverId {
    Ljt,
    Merged,
    Horn,
    HeadFirst,
    Term,
    Hudelmaier,
    FullIpc,
    Oracle,
    BadRandom(u64),
    BadFp,
}

impl ProverId {
    /// The eight correct provers.
    pub const REAL: [ProverId; 8] = [
        ProverId::Ljt,
        ProverId::Merged,
        ProverId::Horn,
        ProverId::HeadFirst,
        ProverId::Term,
        ProverId::Hudelmaier,
        ProverId::FullIpc,
        ProverId::Oracle,
    ];

    pub fn prove(self, f: &Formula, limits: Limits) -> Result<Verdict, ProveError> {
        match self {
            ProverId::Ljt => prove_ljt(f, limits),
            ProverId::Merged => prove_merged(f, limits),
            ProverId::Horn => prove_horn(f, limits),
            ProverId::HeadFirst => prove_headfirst(f, limits),
            ProverId::Term => prove_with_term(f, limits),
            ProverId::Hudelmaier => prove_hudelmaier(f, limits),
            ProverId::FullIpc => prove_full_ipc(f, limits),
            ProverId::Oracle => prove_oracle(f, limits),
            ProverId::BadRandom(seed) => bad_prover_random(f, seed),
            ProverId::BadFp => bad_prover_fp(f, limits),
        }
    }

    /// True when the prover accepts formulas outside the implicational fragment.
    pub fn accepts_full(self) -> bool {
        matches!(
            self,
            ProverId::FullIpc | ProverId::Oracle | ProverId::BadRandom(_)
        )
    }

    pub fn names() -> &'static [&'static str] {
        &[
            "ljt",
            "merged",
            "horn",
            "headfirst",
            "term",
            "hudelmaier",
            "fullipc",
            "oracle",
            "bad-random",
            "bad-fp",
        ]
    }
}

impl fmt::Display for ProverId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProverId::Ljt => out.write_str("ljt"),
            ProverId::Merged => out.write_str("merged"),
            ProverId::Horn => out.write_str("horn"),
            ProverId::HeadFirst => out.write_str("headfirst"),
            ProverId::Term => out.write_str("term"),
            ProverId::Hudelmaier => out.write_str("hudelmaier"),
            ProverId::FullIpc => out.write_str("fullipc"),
            ProverId::Oracle => out.write_str("oracle"),
            ProverId::BadRandom(0) => out.write_str("bad-random"),
            ProverId::BadRandom(seed) => write!(out, "bad-random:{seed}"),
            ProverId::BadFp => out.write_str("bad-fp"),
        }
    }
}

impl FromStr for ProverId {
    type Err = String;

    /// Accepts the names from [`ProverId::names`]; `bad-random:SEED` sets the coin seed.
    fn from_str(s: &str) -> Result<ProverId, String> {
        Ok(match s {
            "ljt" => ProverId::Ljt,
            "merged" => ProverId::Merged,
            "horn" => ProverId::Horn,
            "headfirst" => ProverId::HeadFirst,
            "term" => ProverId::Term,
            "hudelmaier" => ProverId::Hudelmaier,
            "fullipc" => ProverId::FullIpc,
            "oracle" => ProverId::Oracle,
            "bad-random" => ProverId::BadRandom(0),
            "bad-fp" => ProverId::BadFp,
            _ => match s.strip_prefix("bad-random:").map(str::parse) {
                Some(Ok(seed)) => ProverId::BadRandom(seed),
                _ => {
                    return Err(format!(
                        "unknown prover '{s}' (expected one of {})",
                        ProverId::names().join(", ")
                    ))
                }
            },
        })
    }
}
