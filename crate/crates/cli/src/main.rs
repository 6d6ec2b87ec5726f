//! `intuit`: generators, counters, provers, transforms and the
//! differential-testing harness behind one line-oriented command.

use std::fs;
use std::io::{self, BufRead, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use intuit_core::counting::{count_family, family_lines, Family};
use intuit_core::harness::*;
use intuit_core::parse::{corpus_lines, parse_formula_with_symbols, parse_horn_with_symbols};
use intuit_core::provers::{prove_with_term, Limits, ProverId};
use intuit_core::random::*;
use intuit_core::transforms::*;
use intuit_core::Formula;

#[derive(Parser)]
#[command(
    name = "intuit",
    version,
    about = "Intuitionistic propositional logic: generate, prove, transform, fuzz"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every member of a family at one size, one per line.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        size: usize,
    },
    /// Print `size<TAB>count` for sizes 0..=max.
    Count {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        max: usize,
        /// Stop starting new sizes after this many seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Print random structures drawn from a seeded generator.
    Random {
        #[arg(long, value_enum)]
        kind: RandomKind,
        /// Arrows for impl, applications for sk, target term size for nf,
        /// elements for partition.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest accepted type size for sk.
        #[arg(long, default_value_t = 0)]
        min_type_size: usize,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// For sk and nf, print the term and a tab before the type.
        #[arg(long)]
        show_term: bool,
    },
    /// Read formulas, one per line, and print PROVED, NOT_PROVED or UNKNOWN.
    Prove {
        #[arg(long)]
        prover: ProverId,
        /// Append the proof term (term prover only).
        #[arg(long)]
        proof_term: bool,
        /// Search steps per formula before answering UNKNOWN.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Read formulas (or clauses for unhorn) and print their transforms.
    Transform {
        #[arg(long, value_enum)]
        kind: TransformKind,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Differential testing against a gold prover; discrepancies as JSON lines.
    Fuzz {
        #[arg(long, value_enum, default_value_t = FuzzMode::Gold)]
        mode: FuzzMode,
        /// Built-in prover under test.
        #[arg(
            long,
            conflicts_with = "external",
            required_unless_present = "external"
        )]
        suspect: Option<ProverId>,
        /// Command line of an external prover under test.
        #[arg(long)]
        external: Option<String>,
        /// Seconds per formula for the external prover.
        #[arg(long, default_value_t = DEFAULT_EXTERNAL_TIMEOUT.as_secs_f64())]
        timeout: f64,
        #[arg(long, default_value = "oracle")]
        gold: ProverId,
        /// Family for gold mode, and source family for mints self-check.
        #[arg(long, default_value = "impl-all")]
        family: Family,
        /// Largest size swept by gold and mints modes.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Formula size for random mode.
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Formulas drawn in random mode.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// In mints mode, compare the suspect with itself on the source
        /// formula instead of expecting tautologies to be proved.
        #[arg(long)]
        self_check: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recompute family counts and compare them with the published sequences.
    VerifyCounts {
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Time provers on the exhaustive suites; TSV on stdout.
    Bench {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "ljt,merged,horn,headfirst,hudelmaier"
        )]
        provers: Vec<ProverId>,
        #[arg(long, value_delimiter = ',', default_value = "9,11")]
        sizes: Vec<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Impl,
    Sk,
    Nf,
    Partition,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Horn,
    Unhorn,
    NestedHorn,
    Mints,
    Disjbicond,
    Undisjbicond,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzMode {
    Gold,
    Random,
    Mints,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("intuit: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>> {
    s.map(|s| {
        Duration::try_from_secs_f64(s).context("--budget must be a non-negative number of seconds")
    })
    .transpose()
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .lock()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match command {
        Command::Gen { family, size } => {
            for line in family_lines(family, size) {
                writeln!(out, "{line}")?;
            }
            ExitCode::SUCCESS
        }
        Command::Count {
            family,
            max,
            budget,
        } => {
            write!(
                out,
                "{}",
                count_family(family, max, seconds(budget)?).to_tsv()
            )?;
            ExitCode::SUCCESS
        }
        Command::Random {
            kind,
            size,
            seed,
            min_type_size,
            retries,
            count,
            show_term,
        } => {
            let mut rng = seeded(seed);
            for _ in 0..count {
                match kind {
                    RandomKind::Impl => writeln!(out, "{}", random_impl_formula(size, &mut rng))?,
                    RandomKind::Partition => {
                        writeln!(out, "{}", random_set_partition(size, &mut rng))?
                    }
                    RandomKind::Sk => {
                        let (t, ty) = random_sk_typed(size, min_type_size, retries, &mut rng)?;
                        if show_term {
                            write!(out, "{t}\t")?;
                        }
                        writeln!(out, "{ty}")?;
                    }
                    RandomKind::Nf => {
                        let (t, ty) = random_typed_nf(size, retries, &mut rng)?;
                        if show_term {
                            write!(out, "{t}\t")?;
                        }
                        writeln!(out, "{ty}")?;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Prove {
            prover,
            proof_term,
            budget,
            input,
        } => {
            if proof_term && prover != ProverId::Term {
                eprintln!("intuit: --proof-term needs --prover term");
                return Ok(ExitCode::from(2));
            }
            let limits = budget.map_or(Limits::default(), Limits::with_budget);
            prove_lines(&mut out, input.as_ref(), prover, proof_term, limits)?
        }
        Command::Transform { kind, input } => transform_lines(&mut out, input.as_ref(), kind)?,
        Command::Fuzz {
            mode,
            suspect,
            external,
            timeout,
            gold,
            family,
            max_size,
            size,
            count,
            seed,
            self_check,
            jobs,
        } => {
            let suspect: Box<dyn Decider> = match (suspect, external) {
                (Some(p), _) => Box::new(Builtin::new(p)),
                (None, Some(cmd)) => {
                    let mut ext = ExternalProver::parse(&cmd);
                    if ext.command.is_empty() {
                        bail!("--external needs a command");
                    }
                    ext.timeout = Duration::try_from_secs_f64(timeout)
                        .context("--timeout must be non-negative")?;
                    Box::new(ext)
                }
                (None, None) => bail!("one of --suspect or --external is required"),
            };
            let gold = Builtin::new(gold);
            let report = with_jobs(jobs, || match mode {
                FuzzMode::Gold => gold_test_family(family, max_size, &gold, suspect.as_ref()),
                FuzzMode::Random => random_gold_test(size, count, seed, &gold, suspect.as_ref()),
                FuzzMode::Mints => {
                    let m = if self_check {
                        MintsMode::SelfCheck(family)
                    } else {
                        MintsMode::Taut
                    };
                    mints_harden_fuzz(suspect.as_ref(), max_size, m)
                }
            });
            for d in &report.discrepancies {
                writeln!(out, "{}", d.to_json_line())?;
            }
            eprintln!(
                "checked {}, discrepancies {}, unknown {}",
                report.checked,
                report.discrepancies.len(),
                report.unknown.len()
            );
            if report.discrepancies.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::VerifyCounts { budget } => {
            let checks = verify_counts(&default_verify_sizes(), seconds(budget)?);
            writeln!(out, "family\tsize\tgot\texpected\tstatus")?;
            for c in &checks {
                let expected = c.expected.map_or("-".to_string(), |e| e.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{expected}\t{:?}",
                    c.family, c.size, c.got, c.status
                )?;
            }
            if checks.iter().any(|c| c.status == CountStatus::Mismatch) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Bench {
            provers,
            sizes,
            jobs,
        } => {
            let deciders: Vec<Builtin> = provers.into_iter().map(Builtin::new).collect();
            let refs: Vec<&dyn Decider> = deciders.iter().map(|d| d as &dyn Decider).collect();
            let rows = with_jobs(jobs, || bench(&refs, &sizes));
            writeln!(out, "{BENCH_HEADER}")?;
            for r in rows {
                writeln!(out, "{r}")?;
            }
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

/// One answer per input line; unparsable lines are reported on stderr and
/// answered UNKNOWN so the output stays aligned with the input.
fn prove_lines(
    out: &mut impl Write,
    input: Option<&PathBuf>,
    prover: ProverId,
    proof_term: bool,
    limits: Limits,
) -> Result<ExitCode> {
    let answer = |f: &Formula| -> String {
        if proof_term {
            return match prove_with_term(f, limits) {
                Ok(v) if v.proved => match v.proof_term {
                    Some(t) => format!("PROVED {t}"),
                    None => "PROVED".to_string(),
                },
                Ok(_) => "NOT_PROVED".to_string(),
                Err(_) => "UNKNOWN".to_string(),
            };
        }
        Builtin { prover, limits }.decide(f).to_string()
    };
    let mut bad_input = false;
    let mut handle = |no: usize, line: &str, out: &mut dyn Write| -> io::Result<()> {
        match parse_formula_with_symbols(line) {
            Ok((f, _)) => writeln!(out, "{}", answer(&f)),
            Err(e) => {
                eprintln!("line {no}: {e}");
                bad_input = true;
                writeln!(out, "UNKNOWN")
            }
        }
    };
    match input {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            for (no, line) in corpus_lines(&text) {
                handle(no, line, out)?;
            }
        }
        None => {
            // stream so `gen | prove` answers as it reads
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let line = line.context("reading stdin")?;
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                handle(i + 1, line, out)?;
                out.flush()?;
            }
        }
    }
    Ok(if bad_input {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn transform_lines(
    out: &mut impl Write,
    input: Option<&PathBuf>,
    kind: TransformKind,
) -> Result<ExitCode> {
    let text = read_input(input)?;
    let mut failed = false;
    for (no, line) in corpus_lines(&text) {
        let result: Result<String> = (|| {
            if let TransformKind::Unhorn = kind {
                let (h, sym) = parse_horn_with_symbols(line)?;
                return Ok(from_horn(&h).display_with(&sym).to_string());
            }
            let (f, sym) = parse_formula_with_symbols(line)?;
            Ok(match kind {
                TransformKind::Horn => to_horn(&f)?.display_with(&sym).to_string(),
                TransformKind::NestedHorn => {
                    to_nested_horn_list(&f)?.display_with(&sym).to_string()
                }
                TransformKind::Mints => {
                    let (m, first) = mints_with_first_fresh(&f);
                    let names = mints_symbols(sym, first);
                    let shown = m.display_with(&names).to_string();
                    shown
                }
                TransformKind::Disjbicond => to_disj_bicond(&f).display_with(&sym).to_string(),
                TransformKind::Undisjbicond => from_disj_bicond(&f).display_with(&sym).to_string(),
                TransformKind::Unhorn => unreachable!("handled above"),
            })
        })();
        match result {
            Ok(s) => writeln!(out, "{s}")?,
            Err(e) => {
                eprintln!("line {no}: {e:#}");
                failed = true;
            }
        }
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
