//! `pawit`: witnesses, certificates and sentence evaluation for the
//! twin-rough fragment theory.
//!
//! Exit codes: 0 success, 1 mathematical rejection, 2 search exhausted,
//! 64 usage, 65 bad data.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use pawit_core::formula::{eval_bounded, eval_schema, parse, render_with, Assignment, FormulaError, RenderOptions, DEFAULT_NUMERAL_CAP};
use pawit_core::harness::{demonstrate, tag_from_sentence, tags_from_json, HarnessError, HarnessOptions};
use pawit_core::schemas::{sigma_with_bound, SchemaTag, TagRecord};
use pawit_core::stats::stats;
use pawit_core::witness::{find_witnesses, verify_json, CertificateError, EngineError, VerdictEntry, Witness};
use pawit_core::{FragmentSpec, SearchPolicy};

const EXIT_REJECTED: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Caps the worker threads used by sieving and primality batches.
const THREADS_ENV: &str = "PAWIT_THREADS";

#[derive(Parser)]
#[command(name = "pawit", version, about = "Finite-fragment witnesses for the twin-rough theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the first n primes of m * P_k - 1 and print a certificate.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest progression index to try.
        #[arg(long, default_value_t = SearchPolicy::default().max_progression_index)]
        max_m: u64,
        /// Extra Miller-Rabin rounds for values above 2^64.
        #[arg(long, default_value_t = SearchPolicy::default().primality_rounds)]
        rounds: u32,
    },
    /// Re-check a certificate from scratch.
    Verify { path: PathBuf },
    /// Evaluate a closed sentence under an assignment of the constants.
    Eval {
        formula: String,
        /// `cI=VALUE`, repeatable; indices must cover 1..n.
        #[arg(long = "assign", value_name = "cI=VALUE")]
        assign: Vec<String>,
        /// Search bound for quantifiers (and for sigma in schema mode).
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
        /// Decide exactly through the named schema, e.g. `gamma:1:3`.
        #[arg(long)]
        schema: Option<String>,
    },
    /// Print a schema instance, e.g. `alpha:2`, `gamma:1:5`, `sigma:3`.
    Schema {
        tag: String,
        /// Largest numeral printed as nested successors.
        #[arg(long, default_value_t = DEFAULT_NUMERAL_CAP)]
        cap: u64,
    },
    /// Cover a finite request by a fragment and show its witness model.
    Cover {
        /// JSON array of {"kind","i","p"} records, or a path to one.
        tags: Option<String>,
        /// Sentence text matched back to its schema; repeatable.
        #[arg(long = "sentence")]
        sentences: Vec<String>,
        /// Accept omega tags in the request.
        #[arg(long)]
        allow_omega: bool,
        #[arg(long, default_value_t = SearchPolicy::default().max_progression_index)]
        max_m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Prime counts in the witness residue classes up to x.
    Stats {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("pawit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| fail(EXIT_USAGE, format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| fail(EXIT_USAGE, e))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Witness { n, k, out, max_m, rounds } => cmd_witness(n, k, out, max_m, rounds),
        Command::Verify { path } => cmd_verify(&path),
        Command::Eval { formula, assign, bound, schema } => cmd_eval(&formula, &assign, bound, schema.as_deref()),
        Command::Schema { tag, cap } => cmd_schema(&tag, cap),
        Command::Cover { tags, sentences, allow_omega, max_m, json } => {
            cmd_cover(tags.as_deref(), &sentences, allow_omega, max_m, json)
        }
        Command::Stats { k, x, json } => cmd_stats(k, x, json),
    }
}

fn engine_failure(e: EngineError) -> Failure {
    match e {
        EngineError::SearchExhausted { .. } => fail(EXIT_EXHAUSTED, e),
        EngineError::Fragment(_) | EngineError::PolicyTooSmall { .. } => fail(EXIT_USAGE, e),
    }
}

fn cmd_witness(n: u32, k: u32, out: Option<PathBuf>, max_m: u64, rounds: u32) -> Outcome {
    let spec = FragmentSpec::new(n, k).map_err(|e| fail(EXIT_USAGE, e))?;
    let policy = SearchPolicy {
        max_progression_index: max_m,
        primality_rounds: rounds,
        ..SearchPolicy::default()
    };
    let cert = find_witnesses(spec, &policy).map_err(engine_failure)?;
    let json = cert.to_json();
    match out {
        Some(path) => fs::write(&path, json).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    Ok(0)
}

fn cmd_verify(path: &PathBuf) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", path.display())))?;
    let report = verify_json(&text).map_err(|e| match e {
        CertificateError::Json(_) | CertificateError::Structure(_) => fail(EXIT_DATA, e),
    })?;
    print!("{report}");
    Ok(if report.accepted() { 0 } else { EXIT_REJECTED })
}

fn parse_assignment(items: &[String]) -> Result<Assignment, Failure> {
    let pairs = items
        .iter()
        .map(|item| {
            let bad = || fail(EXIT_USAGE, format!("bad assignment `{item}`: expected cI=VALUE"));
            let (lhs, rhs) = item.split_once('=').ok_or_else(bad)?;
            let idx: u32 = lhs.trim().strip_prefix('c').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
            let value: BigUint = rhs.trim().parse().map_err(|_| bad())?;
            Ok((idx, value))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Assignment::from_pairs(pairs).map_err(|e| fail(EXIT_USAGE, e))
}

fn formula_failure(e: FormulaError) -> Failure {
    match e {
        FormulaError::MissingConstant(_) | FormulaError::BadAssignment(_) | FormulaError::Untagged => {
            fail(EXIT_USAGE, e)
        }
        _ => fail(EXIT_DATA, e),
    }
}

fn cmd_eval(formula: &str, assign: &[String], bound: u64, schema: Option<&str>) -> Outcome {
    let sentence = parse(formula).map_err(|e| fail(EXIT_DATA, e))?;
    let assignment = parse_assignment(assign)?;
    let verdict = match schema {
        None => eval_bounded(&sentence, &assignment, bound).map_err(formula_failure)?,
        Some(text) => {
            let tag: SchemaTag = text.parse().map_err(|e| fail(EXIT_USAGE, e))?;
            let tagged = match tag {
                SchemaTag::Sigma { p } => sigma_with_bound(p, bound).map_err(|e| fail(EXIT_USAGE, e))?,
                _ => tag.instantiate(),
            };
            if tagged.sentence().normalized() != sentence.normalized() {
                return Err(fail(EXIT_USAGE, format!("sentence is not the {tag} instance")));
            }
            eval_schema(&tagged, &assignment).map_err(formula_failure)?
        }
    };
    println!("{verdict}");
    Ok(0)
}

fn cmd_schema(tag: &str, cap: u64) -> Outcome {
    let tag: SchemaTag = tag.parse().map_err(|e| fail(EXIT_USAGE, e))?;
    println!("{}", render_with(tag.instantiate().sentence(), &RenderOptions { numeral_cap: cap }));
    Ok(0)
}

fn harness_failure(e: HarnessError) -> Failure {
    match e {
        HarnessError::Json(_) => fail(EXIT_DATA, e),
        HarnessError::Sentence { source: FormulaError::Untagged, .. } => fail(EXIT_USAGE, e),
        HarnessError::Sentence { .. } => fail(EXIT_DATA, e),
        HarnessError::Engine(inner) => engine_failure(inner),
        HarnessError::Empty | HarnessError::NotInTheory(_) | HarnessError::Tag(_) => fail(EXIT_USAGE, e),
    }
}

#[derive(Serialize)]
struct CoverReport<'a> {
    n: u32,
    k: u32,
    tags: Vec<TagRecord>,
    witnesses: &'a [Witness],
    verdicts: Vec<VerdictEntry>,
    assumptions: &'a [String],
}

fn cmd_cover(input: Option<&str>, sentences: &[String], allow_omega: bool, max_m: u64, json: bool) -> Outcome {
    let mut tags = Vec::new();
    if let Some(input) = input {
        let text = if input.trim_start().starts_with('[') {
            input.to_string()
        } else {
            fs::read_to_string(input).map_err(|e| fail(EXIT_DATA, format!("{input}: {e}")))?
        };
        tags.extend(tags_from_json(&text).map_err(harness_failure)?);
    }
    for s in sentences {
        tags.push(tag_from_sentence(s).map_err(harness_failure)?);
    }
    let policy = SearchPolicy {
        max_progression_index: max_m,
        ..SearchPolicy::default()
    };
    let demo = demonstrate(&tags, HarnessOptions { allow_omega }, &policy).map_err(harness_failure)?;
    let (n, k) = (demo.cover.n, demo.cover.k);
    if json {
        let report = CoverReport {
            n,
            k,
            tags: demo.cover.tags.iter().map(|&t| t.into()).collect(),
            witnesses: &demo.certificate.witnesses,
            verdicts: demo.verdicts.iter().map(|(t, v)| VerdictEntry::new(*t, v.clone())).collect(),
            assumptions: &demo.assumptions,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("cover n={n} k={k}");
        for w in &demo.certificate.witnesses {
            println!("c{} = {} (m={}, {})", w.i, w.value, w.m, w.regime);
        }
        for (tag, verdict) in &demo.verdicts {
            println!("{tag} {verdict}");
        }
        for a in &demo.assumptions {
            println!("assumption: {a}");
        }
    }
    Ok(if demo.all_true() { 0 } else { EXIT_REJECTED })
}

fn cmd_stats(k: u64, x: u64, json: bool) -> Outcome {
    if x < 2 {
        return Err(fail(EXIT_USAGE, "x must be at least 2"));
    }
    let report = stats(k, x).map_err(|e| fail(EXIT_USAGE, e))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let rows = [
            ("k", report.k.to_string()),
            ("x", report.x.to_string()),
            ("pi_x", report.pi_x.to_string()),
            ("omega_class_count", report.omega_class_count.to_string()),
            ("gamma_class_count", report.gamma_class_count.to_string()),
            ("totient", report.totient.to_string()),
            ("dirichlet_expectation", report.dirichlet_expectation.clone()),
        ];
        for (name, value) in rows {
            println!("{name:<22}{value}");
        }
    }
    Ok(0)
}
