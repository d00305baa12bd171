//! Subcommands of the `mds-spectra` tool, callable without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
//! 3 enumeration budget exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mds_spectra::identities::{self, SweepReport};
use mds_spectra::oracle::{self, CensusOptions};
use mds_spectra::verify::{verify_census, Verification};
use mds_spectra::{
    CodeParams, CosetCensus, Error, Evaluator, Fault, MdsCode, RadiusGate, Spectrum,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mds-spectra",
    version,
    about = "Integral weight spectra of MDS code cosets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the spectrum of the cosets of one weight as CSV or JSON.
    Compute(ComputeArgs),
    /// Compare every applicable formula with an exhaustive coset census.
    Verify(VerifyArgs),
    /// Run the binomial identity and formula-equivalence sweeps.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Field order (a prime power).
    #[arg(long)]
    pub q: usize,
    /// Code length, at most q + 1.
    #[arg(long)]
    pub n: usize,
    /// Code dimension.
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Coset weight W in 0..=3.
    #[arg(long)]
    pub coset_weight: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Take covering radius 3 on trust instead of measuring it (W = 3 only).
    #[arg(long)]
    pub assume_covering_radius_3: bool,
    /// Census threads used to measure the covering radius for W = 3.
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value_t = 3)]
    pub max_coset_weight: usize,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

impl VerifyArgs {
    /// Text-format arguments for `[n, k]_q` on one worker.
    pub fn new(n: usize, k: usize, q: usize, max_coset_weight: usize) -> Self {
        VerifyArgs {
            code: CodeArgs { q, n, k },
            max_coset_weight,
            workers: 1,
            format: ReportFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// Largest n (and w) of the binomial sweeps, at most 60.
    #[arg(long, default_value_t = 40)]
    pub max_w: usize,
    /// Largest field order of the q-dependent sweeps.
    #[arg(long, default_value_t = 9)]
    pub max_q: usize,
}

fn default_workers() -> usize {
    CensusOptions::default().workers
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Output of a command that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Verify(args) => {
            let report = run_verify(&args, None)?;
            let stdout = match args.format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            };
            let code = if report.status == Status::Pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            Ok(Outcome { code, stdout })
        }
        Command::Identities(args) => cmd_identities(&args),
    }
}

fn params(args: &CodeArgs) -> Result<CodeParams, CliError> {
    Ok(CodeParams::new(args.n, args.k, args.q)?)
}

#[derive(Serialize)]
struct SpectrumJson {
    q: usize,
    n: usize,
    k: usize,
    d: usize,
    coset_weight: usize,
    spectrum: Vec<String>,
}

/// `w,count` header, then one row per weight `0..=n`.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("w,count\n");
    for (w, c) in spectrum.counts().iter().enumerate() {
        writeln!(out, "{w},{c}").unwrap();
    }
    out
}

pub fn spectrum_json(params: CodeParams, coset_weight: usize, spectrum: &Spectrum) -> String {
    let doc = SpectrumJson {
        q: params.q(),
        n: params.n(),
        k: params.k(),
        d: params.d(),
        coset_weight,
        spectrum: spectrum.counts().iter().map(ToString::to_string).collect(),
    };
    serde_json::to_string(&doc).expect("spectrum serializes") + "\n"
}

pub fn cmd_compute(args: &ComputeArgs) -> Result<Outcome, CliError> {
    let params = params(&args.code)?;
    let radius = if args.coset_weight != 3 {
        RadiusGate::Unknown
    } else if args.assume_covering_radius_3 {
        RadiusGate::Assumed
    } else {
        match oracle::check_budget(params) {
            Ok(()) => {
                let code = MdsCode::new(params)?;
                let census = oracle::census_with(&code, CensusOptions { workers: args.workers })?;
                RadiusGate::Known(census.covering_radius)
            }
            Err(e) => {
                return Err(CliError {
                    code: EXIT_BUDGET,
                    message: format!(
                        "cannot measure the covering radius ({e}); pass --assume-covering-radius-3 to skip the census"
                    ),
                })
            }
        }
    };
    let spectrum = Evaluator::new(params)
        .with_covering_radius(radius)
        .full_spectrum(args.coset_weight)?;
    let text = match args.format {
        TableFormat::Csv => spectrum_csv(&spectrum),
        TableFormat::Json => spectrum_json(params, args.coset_weight, &spectrum),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError {
                code: EXIT_INVALID,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            Ok(Outcome {
                code: EXIT_PASS,
                stdout: String::new(),
            })
        }
        None => Ok(Outcome {
            code: EXIT_PASS,
            stdout: text,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invocation {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub max_coset_weight: usize,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchRow {
    pub coset_weight: usize,
    pub w: usize,
    pub check: String,
    pub formula_value: String,
    pub oracle_value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub invocation: Invocation,
    pub status: Status,
    pub covering_radius: usize,
    /// Coset counts by coset weight.
    pub cosets: Vec<(usize, u64)>,
    pub checks: Vec<String>,
    pub comparisons: usize,
    pub mismatches: Vec<MismatchRow>,
    pub invariant_failures: Vec<String>,
    pub skipped: Vec<String>,
    pub timing_seconds: f64,
}

impl RunReport {
    fn from_verification(
        invocation: Invocation,
        census: &CosetCensus,
        v: Verification,
        secs: f64,
    ) -> Self {
        RunReport {
            invocation,
            status: if v.passed() {
                Status::Pass
            } else {
                Status::Fail
            },
            covering_radius: census.covering_radius,
            cosets: census
                .per_weight
                .iter()
                .map(|(&w, c)| (w, c.coset_count))
                .collect(),
            checks: v.checks,
            comparisons: v.comparisons,
            mismatches: v
                .mismatches
                .into_iter()
                .map(|m| MismatchRow {
                    coset_weight: m.coset_weight,
                    w: m.w,
                    check: m.check,
                    formula_value: match m.formula {
                        Ok(v) => v.to_string(),
                        Err(e) => format!("error: {e}"),
                    },
                    oracle_value: m.oracle.to_string(),
                })
                .collect(),
            invariant_failures: v.invariant_failures,
            skipped: v.skipped,
            timing_seconds: secs,
        }
    }

    pub fn to_text(&self) -> String {
        let i = &self.invocation;
        let mut out = String::new();
        writeln!(
            out,
            "verify [{},{},{}]_{} max-coset-weight={} workers={}",
            i.n, i.k, i.d, i.q, i.max_coset_weight, i.workers
        )
        .unwrap();
        let cosets: Vec<String> = self
            .cosets
            .iter()
            .map(|(w, c)| format!("W{w}={c}"))
            .collect();
        writeln!(
            out,
            "census: covering radius {}, cosets {}",
            self.covering_radius,
            cosets.join(" ")
        )
        .unwrap();
        writeln!(
            out,
            "checked {} forms, {} comparisons",
            self.checks.len(),
            self.comparisons
        )
        .unwrap();
        for s in &self.skipped {
            writeln!(out, "skipped: {s}").unwrap();
        }
        for f in &self.invariant_failures {
            writeln!(out, "invariant violated: {f}").unwrap();
        }
        for m in &self.mismatches {
            writeln!(
                out,
                "mismatch: W={} w={} {}: formula {} != oracle {}",
                m.coset_weight, m.w, m.check, m.formula_value, m.oracle_value
            )
            .unwrap();
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        writeln!(out, "status: {status}").unwrap();
        writeln!(out, "time: {:.3} s", self.timing_seconds).unwrap();
        out
    }
}

/// Runs the census and compares it with every applicable formula. A fault,
/// when given, perturbs one binomial of one form (test fixture).
pub fn run_verify(args: &VerifyArgs, fault: Option<Fault>) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let params = params(&args.code)?;
    oracle::check_budget(params)?;
    let code = MdsCode::new(params)?;
    let census = oracle::census_with(
        &code,
        CensusOptions {
            workers: args.workers.max(1),
        },
    )?;
    Ok(report_census(&census, args, fault, start))
}

/// The comparison half of [`run_verify`], for a census already taken.
pub fn verify_with_census(
    census: &CosetCensus,
    args: &VerifyArgs,
    fault: Option<Fault>,
) -> RunReport {
    report_census(census, args, fault, Instant::now())
}

fn report_census(
    census: &CosetCensus,
    args: &VerifyArgs,
    fault: Option<Fault>,
    start: Instant,
) -> RunReport {
    let params = census.params;
    let verification = verify_census(census, args.max_coset_weight, fault);
    let invocation = Invocation {
        q: params.q(),
        n: params.n(),
        k: params.k(),
        d: params.d(),
        max_coset_weight: args.max_coset_weight,
        workers: args.workers.max(1),
    };
    RunReport::from_verification(
        invocation,
        census,
        verification,
        start.elapsed().as_secs_f64(),
    )
}

pub fn cmd_identities(args: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let reports: Vec<SweepReport> = identities::run_all(args.max_w, args.max_q)?;
    let mut out = String::new();
    for r in &reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        writeln!(out, "{verdict} {} ({} cases)", r.name, r.cases).unwrap();
        for f in r.failures.iter().take(10) {
            writeln!(out, "  {f}").unwrap();
        }
    }
    let passed = reports.iter().all(SweepReport::passed);
    writeln!(out, "status: {}", if passed { "pass" } else { "fail" }).unwrap();
    Ok(Outcome {
        code: if passed { EXIT_PASS } else { EXIT_FAIL },
        stdout: out,
    })
}
