//! Differential testing of provers: gold tests over generated streams,
//! Mints-hardening fuzzing, an adapter for external prover processes,
//! count verification and timing tables.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::counting::{count_family, family_formulas, Family};
use crate::exhaustive::{gen_impl_formulas, gen_impl_tautologies};
use crate::formula::Formula;
use crate::provers::{Limits, ProverId};
use crate::random::{random_impl_formula, seeded};
use crate::transforms::{mints_symbols, mints_with_first_fresh};
use crate::Symbols;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Proved,
    NotProved,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            Outcome::Proved => "PROVED",
            Outcome::NotProved => "NOT_PROVED",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

/// Anything that can be asked for a verdict.
pub trait Decider: Sync {
    fn name(&self) -> String;
    fn decide(&self, f: &Formula) -> Outcome;
}

/// A built-in prover with a per-formula step budget; running out, or
/// receiving a formula outside its language, is [`Outcome::Unknown`].
#[derive(Clone, Copy, Debug)]
pub struct Builtin {
    pub prover: ProverId,
    pub limits: Limits,
}

impl Builtin {
    pub fn new(prover: ProverId) -> Builtin {
        Builtin {
            prover,
            limits: Limits::default(),
        }
    }
}

impl Decider for Builtin {
    fn name(&self) -> String {
        self.prover.to_string()
    }

    fn decide(&self, f: &Formula) -> Outcome {
        match self.prover.prove(f, self.limits) {
            Ok(v) if v.proved => Outcome::Proved,
            Ok(_) => Outcome::NotProved,
            Err(_) => Outcome::Unknown,
        }
    }
}

pub const DEFAULT_EXTERNAL_TIMEOUT: Duration = Duration::from_secs(60);

/// A prover run as a subprocess, one process per formula: the formula is
/// written as one line on stdin and the first stdout line must be `PROVED`,
/// `NOT_PROVED` or `UNKNOWN`. Timeouts kill the process and, like any
/// malformed answer, give [`Outcome::Unknown`].
#[derive(Clone, Debug)]
pub struct ExternalProver {
    pub command: Vec<String>,
    pub timeout: Duration,
}

impl ExternalProver {
    pub fn new(command: Vec<String>) -> ExternalProver {
        ExternalProver {
            command,
            timeout: DEFAULT_EXTERNAL_TIMEOUT,
        }
    }

    /// Splits a command line on whitespace.
    pub fn parse(command_line: &str) -> ExternalProver {
        ExternalProver::new(
            command_line
                .split_whitespace()
                .map(str::to_string)
                .collect(),
        )
    }

    fn run(&self, f: &Formula) -> std::io::Result<Outcome> {
        let (program, args) = self
            .command
            .split_first()
            .ok_or_else(|| std::io::Error::other("empty command"))?;
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;
        let mut stdin = child.stdin.take().expect("stdin is piped");
        // a prover that exits without reading gives a broken pipe; its answer still counts
        let _ = writeln!(stdin, "{f}");
        drop(stdin);
        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            let mut line = String::new();
            let read = BufReader::new(stdout).read_line(&mut line);
            let _ = tx.send(read.map(|_| line));
        });
        let answer = rx.recv_timeout(self.timeout);
        if answer.is_err() {
            let _ = child.kill();
        }
        let _ = child.wait();
        Ok(match answer {
            Ok(Ok(line)) => match line.trim() {
                "PROVED" => Outcome::Proved,
                "NOT_PROVED" => Outcome::NotProved,
                _ => Outcome::Unknown,
            },
            _ => Outcome::Unknown,
        })
    }
}

impl Decider for ExternalProver {
    fn name(&self) -> String {
        format!("external:{}", self.command.join(" "))
    }

    fn decide(&self, f: &Formula) -> Outcome {
        self.run(f).unwrap_or(Outcome::Unknown)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    WrongSuccess,
    WrongFailure,
}

impl DiscrepancyKind {
    /// `None` when the verdicts agree or either is unknown.
    pub fn classify(suspect: Outcome, gold: Outcome) -> Option<DiscrepancyKind> {
        match (suspect, gold) {
            (Outcome::Proved, Outcome::NotProved) => Some(DiscrepancyKind::WrongSuccess),
            (Outcome::NotProved, Outcome::Proved) => Some(DiscrepancyKind::WrongFailure),
            _ => None,
        }
    }
}

fn as_text<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn as_optional_text<S: Serializer>(f: &Option<Formula>, s: S) -> Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_some(&f.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Discrepancy {
    #[serde(serialize_with = "as_text")]
    pub formula: Formula,
    #[serde(
        serialize_with = "as_optional_text",
        skip_serializing_if = "Option::is_none"
    )]
    pub source_formula: Option<Formula>,
    pub kind: DiscrepancyKind,
    pub suspect: String,
    pub gold: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Discrepancy {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("discrepancies serialize")
    }
}

/// Discrepancies plus the formulas where a verdict was unavailable.
#[derive(Clone, Default, Debug)]
pub struct Report {
    pub checked: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub unknown: Vec<Formula>,
}

impl Report {
    fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.discrepancies.extend(other.discrepancies);
        self.unknown.extend(other.unknown);
    }

    pub fn count(&self, kind: DiscrepancyKind) -> usize {
        self.discrepancies.iter().filter(|d| d.kind == kind).count()
    }
}

/// Runs `work` on `jobs` threads (all cores when `None`).
pub fn with_jobs<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => work(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool starts")
            .install(work),
    }
}

enum Check {
    Agree,
    Unknown,
    Differ(DiscrepancyKind),
}

fn compare(suspect: &dyn Decider, gold: &dyn Decider, f: &Formula) -> Check {
    let s = suspect.decide(f);
    if s == Outcome::Unknown {
        return Check::Unknown;
    }
    match DiscrepancyKind::classify(s, gold.decide(f)) {
        Some(k) => Check::Differ(k),
        None => Check::Agree,
    }
}

/// Compares `suspect` against `gold` on every formula; results keep the
/// input order whatever the number of worker threads.
pub fn gold_test(formulas: &[Formula], gold: &dyn Decider, suspect: &dyn Decider) -> Report {
    let checks: Vec<Check> = formulas
        .par_iter()
        .map(|f| compare(suspect, gold, f))
        .collect();
    let mut report = Report {
        checked: formulas.len(),
        ..Report::default()
    };
    for (f, c) in formulas.iter().zip(checks) {
        match c {
            Check::Agree => {}
            Check::Unknown => report.unknown.push(f.clone()),
            Check::Differ(kind) => report.discrepancies.push(Discrepancy {
                formula: f.clone(),
                source_formula: None,
                kind,
                suspect: suspect.name(),
                gold: gold.name(),
                seed: None,
            }),
        }
    }
    report
}

/// [`gold_test`] over a formula family at sizes `0..=max_size`.
pub fn gold_test_family(
    family: Family,
    max_size: usize,
    gold: &dyn Decider,
    suspect: &dyn Decider,
) -> Report {
    let mut report = Report::default();
    for n in 0..=max_size {
        let formulas: Vec<Formula> = family_formulas(family, n)
            .map(Iterator::collect)
            .unwrap_or_default();
        report.merge(gold_test(&formulas, gold, suspect));
    }
    report
}

/// [`gold_test`] on `count` random implicational formulas of size `size`;
/// each discrepancy records the seed.
pub fn random_gold_test(
    size: usize,
    count: usize,
    seed: u64,
    gold: &dyn Decider,
    suspect: &dyn Decider,
) -> Report {
    let mut rng = seeded(seed);
    let formulas: Vec<Formula> = (0..count)
        .map(|_| random_impl_formula(size, &mut rng))
        .collect();
    let mut report = gold_test(&formulas, gold, suspect);
    for d in &mut report.discrepancies {
        d.seed = Some(seed);
    }
    report
}

/// Smallest discrepancy over implicational formulas of increasing size.
pub fn minimal_discrepancy(
    max_size: usize,
    gold: &dyn Decider,
    suspect: &dyn Decider,
) -> Option<Discrepancy> {
    (0..=max_size).find_map(|n| {
        let formulas: Vec<Formula> = gen_impl_formulas(n).collect();
        gold_test(&formulas, gold, suspect)
            .discrepancies
            .into_iter()
            .next()
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MintsMode {
    /// Mints images of known tautologies must be proved.
    Taut,
    /// The suspect's verdict on a formula must match its verdict on the
    /// Mints image.
    SelfCheck(Family),
}

/// Feeds Mints-transformed formulas to the suspect; every report carries
/// the small source formula next to the transformed one.
pub fn mints_harden_fuzz(suspect: &dyn Decider, max_size: usize, mode: MintsMode) -> Report {
    let mut report = Report::default();
    for n in 0..=max_size {
        let sources: Vec<Formula> = match mode {
            MintsMode::Taut => gen_impl_tautologies(n),
            MintsMode::SelfCheck(family) => family_formulas(family, n)
                .map(Iterator::collect)
                .unwrap_or_default(),
        };
        let checks: Vec<(Formula, Outcome, Outcome)> = sources
            .par_iter()
            .map(|src| {
                let m = mints_with_first_fresh(src).0;
                let on_mints = suspect.decide(&m);
                let expected = match mode {
                    MintsMode::Taut => Outcome::Proved,
                    MintsMode::SelfCheck(_) => suspect.decide(src),
                };
                (m, on_mints, expected)
            })
            .collect();
        report.checked += sources.len();
        for (src, (m, on_mints, expected)) in sources.into_iter().zip(checks) {
            if on_mints == Outcome::Unknown || expected == Outcome::Unknown {
                report.unknown.push(m);
                continue;
            }
            if let Some(kind) = DiscrepancyKind::classify(on_mints, expected) {
                let gold = match mode {
                    MintsMode::Taut => "tautology".to_string(),
                    MintsMode::SelfCheck(_) => format!("{} on source", suspect.name()),
                };
                report.discrepancies.push(Discrepancy {
                    formula: m,
                    source_formula: Some(src),
                    kind,
                    suspect: suspect.name(),
                    gold,
                    seed: None,
                });
            }
        }
    }
    report
}

/// A discrepancy with the transformed formula shown using `nv` names.
pub fn describe(d: &Discrepancy) -> String {
    let Some(src) = &d.source_formula else {
        return format!("{:?} on {}", d.kind, d.formula);
    };
    let first = mints_with_first_fresh(src).1;
    let symbols = mints_symbols(Symbols::new(), first);
    format!(
        "{:?} on {} (source {})",
        d.kind,
        d.formula.display_with(&symbols),
        src
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountStatus {
    Match,
    Mismatch,
    NoReference,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountCheck {
    pub family: Family,
    pub size: usize,
    pub got: u64,
    pub expected: Option<u64>,
    pub status: CountStatus,
}

/// Largest sizes checked by default, chosen to keep the whole run short.
pub fn default_verify_sizes() -> Vec<(Family, usize)> {
    vec![
        (Family::ImplSkeletons, 9),
        (Family::Partitions, 9),
        (Family::ImplAll, 6),
        (Family::ImplProvable, 6),
        (Family::ImplTaut, 12),
        (Family::Horn, 9),
        (Family::SortedHorn, 9),
        (Family::Horn3, 8),
        (Family::SortedHorn3, 8),
        (Family::UninhabTree, 8),
        (Family::UninhabVars, 7),
    ]
}

/// Recomputes counts and compares them with the embedded sequences.
pub fn verify_counts(sizes: &[(Family, usize)], budget: Option<Duration>) -> Vec<CountCheck> {
    let mut out = Vec::new();
    for &(family, max) in sizes {
        for (size, got) in count_family(family, max, budget).counts {
            let expected = family.reference_at(size);
            let status = match expected {
                None => CountStatus::NoReference,
                Some(e) if e == got => CountStatus::Match,
                Some(_) => CountStatus::Mismatch,
            };
            out.push(CountCheck {
                family,
                size,
                got,
                expected,
                status,
            });
        }
    }
    out
}

#[derive(Clone, PartialEq, Debug)]
pub struct BenchRow {
    pub prover: String,
    pub size: usize,
    pub positive: Duration,
    pub mix: Duration,
    pub timeouts: usize,
}

impl BenchRow {
    pub fn total(&self) -> Duration {
        self.positive + self.mix
    }
}

pub const BENCH_HEADER: &str = "Prover\tSize\tPositive\tMix\tTotal";

impl fmt::Display for BenchRow {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "{}\t{}\t{:.3}\t{:.3}\t{:.3}",
            self.prover,
            self.size,
            self.positive.as_secs_f64(),
            self.mix.as_secs_f64(),
            self.total().as_secs_f64()
        )
    }
}

fn time_stream(prover: &dyn Decider, formulas: &[Formula]) -> (Duration, usize) {
    let start = Instant::now();
    let timeouts = formulas
        .iter()
        .filter(|f| prover.decide(f) == Outcome::Unknown)
        .count();
    (start.elapsed(), timeouts)
}

/// Single-threaded timings: Positive runs the types of all typed normal
/// forms of size n, Mix all implicational formulas of size n/2.
pub fn bench(provers: &[&dyn Decider], sizes: &[usize]) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    if provers.is_empty() {
        return rows;
    }
    for &n in sizes {
        let positive: Vec<Formula> = gen_impl_tautologies(n);
        let mix: Vec<Formula> = gen_impl_formulas(n / 2).collect();
        for p in provers {
            let (tp, op) = time_stream(*p, &positive);
            let (tm, om) = time_stream(*p, &mix);
            rows.push(BenchRow {
                prover: p.name(),
                size: n,
                positive: tp,
                mix: tm,
                timeouts: op + om,
            });
        }
    }
    rows
}
