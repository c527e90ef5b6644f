//! Command-line front end.
//!
//! Five subcommands cover the verification workflow:
//!
//! * `verify`     — run the word-by-word suite for one target register.
//! * `verify-seq` — run the suite for a sequential multi-target protocol,
//!   with the targets listed in a JSON file.
//! * `eval`       — evaluate one algebra element in a product state and
//!   print the exact value.
//! * `oracle`     — cross-check the symbolic state against the dense
//!   truncation oracle on random words.
//! * `approx`     — find the best exactly-representable register near a
//!   given amplitude vector.
//!
//! Exit codes: `0` when the requested check passes, `1` when a
//! verification or oracle comparison fails, `2` for usage errors and
//! malformed input. `verify`, `verify-seq`, and `oracle` can write a JSON
//! report (`--json PATH`) that is byte-deterministic apart from the
//! `elapsed_ms` field.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use crate::morphism::Morphism;
use crate::oracle::{build_window_vector, compare_with, TruncationWindow};
use crate::parse::{parse_element, parse_scalar};
use crate::pauli::random_word;
use crate::protocol::{
    sequential_verify, suite_window, verify_suite_with, SuiteParams, SuiteReport,
};
use crate::registry::SchmidtVector;
use crate::scalar::{RadicalScalar, Rational};
use crate::states::{AncillaState, ProductState};

/// Decimal digits used when printing floating-point shadows of exact
/// values. Purely cosmetic; nothing is compared in floating point.
const PRINT_DIGITS: u32 = 12;

#[derive(Parser)]
#[command(
    name = "embz",
    version,
    about = "Exact word-by-word verification of entanglement embezzlement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the embezzlement protocol for one target register.
    Verify(VerifyArgs),
    /// Verify a sequential protocol filling several slots in order.
    VerifySeq(VerifySeqArgs),
    /// Evaluate an algebra element in a product state.
    Eval(EvalArgs),
    /// Cross-check symbolic expectations against the dense window oracle.
    Oracle(OracleArgs),
    /// Approximate an amplitude vector by an exactly-representable register.
    Approx(ApproxArgs),
}

/// How a register is named on the command line: rational squared-amplitude
/// weights (the `q[...]` form) or exact amplitudes (the `qx[...]` form).
#[derive(Args)]
struct RegisterArgs {
    /// Qubits per party in one pair block.
    #[arg(long)]
    width: u32,
    /// Comma-separated squared-amplitude weights, e.g. "1,1" or "9,16".
    #[arg(long, conflicts_with = "amplitudes", required_unless_present = "amplitudes")]
    ratios: Option<String>,
    /// Comma-separated exact amplitudes, e.g. "1+sqrt(2),1".
    #[arg(long)]
    amplitudes: Option<String>,
}

impl RegisterArgs {
    fn build(&self) -> Result<Arc<SchmidtVector>, String> {
        let vector = if let Some(ratios) = &self.ratios {
            let ratios = ratios
                .split(',')
                .map(parse_number)
                .collect::<Result<Vec<_>, _>>()?;
            SchmidtVector::from_ratios(self.width, &ratios)
        } else if let Some(amps) = &self.amplitudes {
            let amps = amps
                .split(',')
                .map(|a| parse_scalar(a.trim()).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            SchmidtVector::from_amplitudes(self.width, &amps)
        } else {
            unreachable!("clap requires one of --ratios/--amplitudes");
        };
        vector.map(Arc::new).map_err(|e| e.to_string())
    }
}

/// Suite shape shared by `verify` and `verify-seq`.
#[derive(Args)]
struct SuiteArgs {
    /// Catalyst sites -radius ..= radius enter the word window.
    #[arg(long, default_value_t = 3)]
    radius: i64,
    /// Largest support of randomly drawn words.
    #[arg(long, default_value_t = 8)]
    max_support: usize,
    /// Number of random words after the exhaustive tier.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Seed for the random tier.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl SuiteArgs {
    fn to_params(&self) -> SuiteParams {
        SuiteParams {
            radius: self.radius,
            max_support: self.max_support,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    register: RegisterArgs,
    /// Ancilla slot receiving the target.
    #[arg(long, default_value_t = 0)]
    slot: u32,
    #[command(flatten)]
    suite: SuiteArgs,
    /// Corrupt the protocol on purpose (negative control); the suite is
    /// then expected to fail with a counterexample.
    #[arg(long, value_enum)]
    fault: Option<FaultArg>,
    /// Write a JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FaultArg {
    /// Shift the catalyst toward the blanks instead of away from them.
    ReversedShift,
    /// Swap the ancilla against catalyst site 1 instead of site 0.
    OffsetSwap,
    /// Shift before swapping instead of after.
    SwappedOrder,
}

impl FaultArg {
    fn to_fault(self) -> crate::morphism::Fault {
        match self {
            FaultArg::ReversedShift => crate::morphism::Fault::ReversedShift,
            FaultArg::OffsetSwap => crate::morphism::Fault::OffsetSwap,
            FaultArg::SwappedOrder => crate::morphism::Fault::SwappedOrder,
        }
    }
}

#[derive(Args)]
struct VerifySeqArgs {
    /// JSON file with an array of {"width", "ratios"|"amplitudes", "slot"}.
    #[arg(long, value_name = "FILE")]
    targets: PathBuf,
    #[command(flatten)]
    suite: SuiteArgs,
    /// Write a JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// The element to evaluate, e.g. "X@A:t0 X@B:t0".
    #[arg(long)]
    expr: String,
    /// Slot assignment tN=RATIOS or tN=zero, e.g. t0=2,1. Repeat per slot.
    #[arg(long = "target-slot", value_name = "SLOT=RATIOS")]
    target_slots: Vec<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    register: RegisterArgs,
    /// Ancilla slot holding a copy of the target.
    #[arg(long, default_value_t = 0)]
    slot: u32,
    /// Catalyst sites -radius ..= radius enter the window.
    #[arg(long, default_value_t = 2)]
    radius: i64,
    /// Largest support of the random words.
    #[arg(long, default_value_t = 4)]
    max_support: usize,
    /// Number of random words to compare.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Seed for the word sampler.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write a JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ApproxArgs {
    /// Comma-separated amplitudes, rational or decimal: "3/5,4/5" or
    /// "0.6,0.8".
    #[arg(long)]
    amps: String,
    /// Largest denominator to search.
    #[arg(long, default_value_t = 100)]
    max_den: u64,
}

/// Parse arguments and run one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // clap maps --help/--version to 0 and usage errors to 2
            return err.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::VerifySeq(args) => cmd_verify_seq(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Approx(args) => cmd_approx(args),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

// --- argument helpers -------------------------------------------------------

/// One number, rational (`3/5`), integer (`2`), or decimal (`0.6`).
fn parse_number(text: &str) -> Result<Rational, String> {
    use num_bigint::BigInt;
    let text = text.trim();
    if let Some((int_part, frac_part)) = text.split_once('.') {
        let digits: String = format!("{int_part}{frac_part}");
        let digits = digits.trim_start_matches('-');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("'{text}' is not a decimal number"));
        }
        let numer: BigInt = digits.parse().expect("digit run");
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = Rational::new(numer, denom);
        Ok(if text.starts_with('-') { -value } else { value })
    } else {
        parse_scalar(text)
            .map_err(|e| e.to_string())?
            .as_rational()
            .ok_or_else(|| format!("'{text}' is not rational"))
    }
}

/// `tN=zero` or `tN=k0,k1,...` with the width inferred from the list
/// length.
fn parse_target_slot(text: &str) -> Result<(u32, AncillaState), String> {
    let (slot, state) = text
        .split_once('=')
        .ok_or_else(|| format!("'{text}' is missing '=' (expected tN=RATIOS or tN=zero)"))?;
    let slot = slot
        .strip_prefix('t')
        .and_then(|digits| digits.parse::<u32>().ok())
        .ok_or_else(|| format!("'{slot}' is not a slot (expected tN)"))?;
    if state == "zero" {
        return Ok((slot, AncillaState::ZeroZero));
    }
    let ratios = state
        .split(',')
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    if !ratios.len().is_power_of_two() || ratios.len() < 2 {
        return Err(format!(
            "'{state}' has {} entries, expected a power of two >= 2",
            ratios.len()
        ));
    }
    let width = ratios.len().trailing_zeros();
    let vector = SchmidtVector::from_ratios(width, &ratios).map_err(|e| e.to_string())?;
    Ok((slot, AncillaState::Target(Arc::new(vector))))
}

/// The primitive integer weights from a dense key, `q[1;9,16]` -> `9,16`.
fn key_ratios(vector: &SchmidtVector) -> String {
    let key = vector.canonical_key();
    key[key.find(';').map(|i| i + 1).unwrap_or(0)..key.len() - 1].to_string()
}

fn format_scalar(value: &RadicalScalar) -> String {
    let (re, im) = value.to_f64_parts(PRINT_DIGITS);
    if im == 0.0 {
        format!("{value}  (~ {re:.12})")
    } else {
        format!("{value}  (~ {re:.12} + {im:.12}i)")
    }
}

// --- target-list files --------------------------------------------------------

/// One entry of a `verify-seq --targets` file.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetEntry {
    width: u32,
    #[serde(default)]
    ratios: Option<Vec<NumberEntry>>,
    #[serde(default)]
    amplitudes: Option<Vec<String>>,
    slot: u32,
}

/// A JSON number or a string like "1/2".
#[derive(Deserialize)]
#[serde(untagged)]
enum NumberEntry {
    Int(i64),
    Text(String),
}

impl NumberEntry {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            NumberEntry::Int(n) => Ok(Rational::from_integer((*n).into())),
            NumberEntry::Text(text) => parse_number(text),
        }
    }
}

impl TargetEntry {
    fn build(&self) -> Result<(Arc<SchmidtVector>, u32), String> {
        let vector = match (&self.ratios, &self.amplitudes) {
            (Some(ratios), None) => {
                let ratios = ratios
                    .iter()
                    .map(NumberEntry::to_rational)
                    .collect::<Result<Vec<_>, _>>()?;
                SchmidtVector::from_ratios(self.width, &ratios).map_err(|e| e.to_string())?
            }
            (None, Some(amps)) => {
                let amps = amps
                    .iter()
                    .map(|a| parse_scalar(a).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                SchmidtVector::from_amplitudes(self.width, &amps).map_err(|e| e.to_string())?
            }
            _ => {
                return Err("each target needs exactly one of \"ratios\" or \"amplitudes\"".into())
            }
        };
        Ok((Arc::new(vector), self.slot))
    }
}

fn load_targets(path: &PathBuf) -> Result<Vec<(Arc<SchmidtVector>, u32)>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let entries: Vec<TargetEntry> = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    entries.iter().map(TargetEntry::build).collect()
}

// --- report printing and JSON -------------------------------------------------

fn print_report(report: &SuiteReport) {
    let c = &report.counts;
    println!(
        "  exhaustive: {} words   random: {} words   failed: {}",
        c.exhaustive, c.random, c.failed
    );
    for case in report.cases.iter().take(5) {
        println!(
            "  counterexample: {}\n    blank slot:  {}\n    target slot: {}",
            case.word, case.lhs, case.rhs
        );
    }
    if report.cases.len() > 5 {
        println!("  ... and {} more failing words", report.cases.len() - 5);
    }
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    println!("  {verdict} ({:.2?})", report.elapsed);
}

fn report_json(
    command: &str,
    params: serde_json::Value,
    report: &SuiteReport,
) -> serde_json::Value {
    json!({
        "command": command,
        "params": params,
        "seed": report.params.seed,
        "cases": report.cases.iter().map(|case| json!({
            "word": case.word.to_string(),
            "lhs": case.lhs.to_string(),
            "rhs": case.rhs.to_string(),
            "equal": case.equal,
        })).collect::<Vec<_>>(),
        "counts": {
            "exhaustive": report.counts.exhaustive,
            "random": report.counts.random,
            "failed": report.counts.failed,
        },
        "pass": report.pass,
        "elapsed_ms": report.elapsed.as_millis() as u64,
    })
}

fn write_json(path: &PathBuf, value: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    std::fs::write(path, text + "\n")
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

// --- commands -------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<bool, String> {
    let target = args.register.build()?;
    let params = args.suite.to_params();
    let window = suite_window(&target, args.slot, params.radius);
    println!(
        "verify {} -> t{}  (window: {} addresses)",
        target.canonical_key(),
        args.slot,
        window.len()
    );
    let morphism = match args.fault {
        None => Morphism::embezzle(target.clone(), args.slot),
        Some(fault) => Morphism::embezzle_faulty(target.clone(), args.slot, fault.to_fault()),
    };
    let report =
        verify_suite_with(&target, args.slot, morphism, &params).map_err(|e| e.to_string())?;
    print_report(&report);
    if let Some(path) = &args.json {
        let params_json = json!({
            "target": target.canonical_key(),
            "slot": args.slot,
            "radius": params.radius,
            "max_support": params.max_support,
            "samples": params.samples,
            "seed": params.seed,
        });
        write_json(path, &report_json("verify", params_json, &report))?;
    }
    Ok(report.pass)
}

fn cmd_verify_seq(args: VerifySeqArgs) -> Result<bool, String> {
    let targets = load_targets(&args.targets)?;
    let params = args.suite.to_params();
    let listing: Vec<String> = targets
        .iter()
        .map(|(v, slot)| format!("{}@t{slot}", v.canonical_key()))
        .collect();
    println!("verify-seq {}", listing.join(" ; "));
    let report = sequential_verify(&targets, &params).map_err(|e| e.to_string())?;
    print_report(&report);
    if let Some(path) = &args.json {
        let params_json = json!({
            "targets": listing,
            "radius": params.radius,
            "max_support": params.max_support,
            "samples": params.samples,
            "seed": params.seed,
        });
        write_json(path, &report_json("verify-seq", params_json, &report))?;
    }
    Ok(report.pass)
}

fn cmd_eval(args: EvalArgs) -> Result<bool, String> {
    let element = parse_element(&args.expr).map_err(|e| e.to_string())?;
    let mut state = ProductState::catalyst();
    for text in &args.target_slots {
        let (slot, assignment) = parse_target_slot(text)?;
        state.assign(slot, assignment);
    }
    let value = state.evaluate(&element).map_err(|e| e.to_string())?;
    println!("{value}");
    Ok(true)
}

fn cmd_oracle(args: OracleArgs) -> Result<bool, String> {
    let target = args.register.build()?;
    let state = ProductState::catalyst()
        .with_slot(args.slot, AncillaState::Target(target.clone()));
    let window = TruncationWindow::new(
        target.clone(),
        -args.radius,
        args.radius,
        &[(args.slot, target.width())],
    )
    .map_err(|e| e.to_string())?;
    println!(
        "oracle {} -> t{}  ({} qubits in window)",
        target.canonical_key(),
        args.slot,
        window.qubits()
    );
    let started = std::time::Instant::now();
    let dense = build_window_vector(&state, &window).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut mismatches = Vec::new();
    for _ in 0..args.samples {
        let word = random_word(&mut rng, window.addresses(), args.max_support)
            .map_err(|e| e.to_string())?;
        let cmp = compare_with(&dense, &state, &word).map_err(|e| e.to_string())?;
        if !cmp.equal {
            mismatches.push((word, cmp));
        }
    }
    let elapsed = started.elapsed();
    let pass = mismatches.is_empty();
    println!(
        "  compared: {} words   dense support: {} strings   failed: {}",
        args.samples,
        dense.support_len(),
        mismatches.len()
    );
    for (word, cmp) in mismatches.iter().take(5) {
        println!(
            "  mismatch: {word}\n    symbolic: {}\n    oracle:   {}",
            cmp.symbolic, cmp.oracle
        );
    }
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("  {verdict} ({elapsed:.2?})");
    if let Some(path) = &args.json {
        let value = json!({
            "command": "oracle",
            "params": {
                "target": target.canonical_key(),
                "slot": args.slot,
                "radius": args.radius,
                "max_support": args.max_support,
                "samples": args.samples,
                "seed": args.seed,
            },
            "seed": args.seed,
            "cases": mismatches.iter().map(|(word, cmp)| json!({
                "word": word.to_string(),
                "lhs": cmp.symbolic.to_string(),
                "rhs": cmp.oracle.to_string(),
                "equal": cmp.equal,
            })).collect::<Vec<_>>(),
            "counts": {
                "exhaustive": 0,
                "random": args.samples,
                "failed": mismatches.len(),
            },
            "pass": pass,
            "elapsed_ms": elapsed.as_millis() as u64,
        });
        write_json(path, &value)?;
    }
    Ok(pass)
}

fn cmd_approx(args: ApproxArgs) -> Result<bool, String> {
    let amplitudes = args
        .amps
        .split(',')
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    let approx = crate::protocol::approximate_target(&amplitudes, args.max_den)
        .map_err(|e| e.to_string())?;
    println!("register:    {}", approx.target.canonical_key());
    println!("ratios:      {}", key_ratios(&approx.target));
    println!("denominator: {}", approx.denominator);
    println!("fidelity:    {}", format_scalar(&approx.fidelity));
    println!("max error:   {}", approx.max_error);
    Ok(true)
}
