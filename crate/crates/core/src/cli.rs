//! The `sublattice` command-line front end.
//!
//! Every command can emit a JSON envelope (`--json`) with a fixed
//! `schema_version`, or a human-readable report. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, all checks passed |
//! | 1 | an internal consistency check failed |
//! | 2 | usage or parse error |
//! | 3 | enumeration cap exceeded |
//! | 4 | singular input matrix |
//!
//! Matrices are given as `r11,r12;r21,r22` or as a JSON array of rows. The
//! rows are basis vectors; a witness `M` maps row vectors `v -> v M`.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use clap::{value_parser, Args, Parser, Subcommand};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::counting::{bounds_report, f_product, f_sum, CountReport};
use crate::enumeration::{census, enumerate_hnf, CensusReport, DEFAULT_CAP};
use crate::error::Error;
use crate::lattice::Sublattice;
use crate::normal_forms::IntMatrix;
use crate::oracle::{oracle_equal, oracle_snf, sufficient_radius, PointBox};

pub const SCHEMA_VERSION: &str = "1";
pub const CAP_ENV: &str = "CENSUS_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sublattice",
    version,
    about = "Count, enumerate and classify the finite-index sublattices of Z^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of sublattices of index m (three formulas), classes, and bounds
    Count(CellArgs),
    /// List the canonical basis of every sublattice of index m
    Enumerate(EnumerateArgs),
    /// Canonical basis, index and invariant chain of a sublattice
    Canonical(CanonicalArgs),
    /// Decide identity and equivalence of two sublattices
    Equivalent(EquivalentArgs),
    /// Group all sublattices of index m by invariant chain
    Classify(CensusArgs),
    /// Run every consistency check over a grid of (n, m)
    Verify(VerifyArgs),
    /// Brute-force oracles (debugging aid)
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct CellArgs {
    /// Dimension
    #[arg(short = 'n', value_parser = value_parser!(u32).range(1..))]
    pub n: u32,
    /// Index
    #[arg(short = 'm', value_parser = value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Refuse to enumerate more than this many sublattices
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_CAP, value_parser = value_parser!(u64).range(1..))]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub cell: CellArgs,
    #[command(flatten)]
    pub cap: CapArgs,
    /// Enumerate even when the count exceeds the cap
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub cell: CellArgs,
    #[command(flatten)]
    pub cap: CapArgs,
}

#[derive(Debug, Args)]
pub struct CanonicalArgs {
    /// Basis rows, e.g. "4,2;2,2"
    #[arg(allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EquivalentArgs {
    #[arg(allow_hyphen_values = true)]
    pub first: String,
    #[arg(allow_hyphen_values = true)]
    pub second: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Inclusive dimension range, e.g. 1..3
    #[arg(short = 'n', value_parser = parse_range)]
    pub n: RangeInclusive<u64>,
    /// Inclusive index range, e.g. 1..20
    #[arg(short = 'm', value_parser = parse_range)]
    pub m: RangeInclusive<u64>,
    #[command(flatten)]
    pub cap: CapArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(allow_hyphen_values = true)]
    pub first: String,
    #[arg(allow_hyphen_values = true)]
    pub second: Option<String>,
    /// Box radius for the point-set comparison
    #[arg(long)]
    pub radius: Option<i64>,
    #[arg(long)]
    pub json: bool,
}

/// Parses an inclusive range `a..b` (or a single value `a`) of positive integers.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |x: &str| -> Result<u64, String> {
        let v: u64 = x
            .trim()
            .parse()
            .map_err(|_| format!("not a positive integer: {x:?}"))?;
        if v == 0 {
            return Err("range bounds must be positive".into());
        }
        Ok(v)
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl OutputEnvelope {
    fn new(command: &str, inputs: Value, result: Value, checks: Vec<Check>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs,
            result,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("output error: {0}")]
    Io(#[from] io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::InvalidArgument(_) | Error::Parse(_) | Error::DimensionMismatch { .. } => {
                    EXIT_USAGE
                }
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::Singular => EXIT_SINGULAR,
                Error::Internal(_) => EXIT_CHECK_FAILED,
            },
            CliError::Io(_) | CliError::Json(_) => EXIT_CHECK_FAILED,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs a parsed command line, writing the report to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Count(args) => cmd_count(&args, out),
        Command::Enumerate(args) => cmd_enumerate(&args, out),
        Command::Canonical(args) => cmd_canonical(&args, out),
        Command::Equivalent(args) => cmd_equivalent(&args, out),
        Command::Classify(args) => cmd_classify(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Oracle(args) => cmd_oracle(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit_json(out: &mut dyn Write, envelope: &OutputEnvelope) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, envelope)?;
    writeln!(out)?;
    Ok(())
}

fn exit_for(envelope: &OutputEnvelope) -> i32 {
    if envelope.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn write_checks(out: &mut dyn Write, checks: &[Check]) -> io::Result<()> {
    for c in checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        writeln!(out, "  [{mark}] {}", c.name)?;
    }
    Ok(())
}

fn parse_matrix(s: &str) -> CliResult<IntMatrix> {
    Ok(s.parse::<IntMatrix>()?)
}

fn count_checks(report: &CountReport) -> Vec<Check> {
    vec![
        Check::new("f_recursive == f_sum == f_product", report.agree),
        Check::new("m^(n-1) <= f <= m^n <= m^(n^2)", report.bounds_hold()),
    ]
}

pub fn cmd_count(args: &CellArgs, out: &mut dyn Write) -> CliResult<i32> {
    let report = bounds_report(args.n as usize, args.m)?;
    let envelope = OutputEnvelope::new(
        "count",
        json!({ "n": args.n, "m": args.m }),
        serde_json::to_value(&report)?,
        count_checks(&report),
    );
    if args.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "n = {}, m = {}", report.n, report.m)?;
        writeln!(out, "  f (recursive)  {}", report.f_recursive)?;
        writeln!(out, "  f (sum)        {}", report.f_sum)?;
        writeln!(out, "  f (product)    {}", report.f_product)?;
        writeln!(out, "  f*             {}", report.f_star)?;
        writeln!(out, "  m^(n-1)        {}", report.lower_bound)?;
        writeln!(out, "  m^n            {}", report.upper_bound)?;
        writeln!(out, "  m^(n^2)        {}", report.siegel_bound)?;
        write_checks(out, &envelope.checks)?;
    }
    Ok(exit_for(&envelope))
}

pub fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let n = args.cell.n as usize;
    let m = args.cell.m;
    let expected = f_sum(n, m)?;
    if !args.force && f_product(n, m)? > BigUint::from(args.cap.cap) {
        return Err(Error::CapExceeded {
            count: expected.to_string(),
            cap: args.cap.cap,
        }
        .into());
    }
    let mut count = BigUint::default();
    if args.cell.json {
        let mut matrices = Vec::new();
        for h in enumerate_hnf(n, m)? {
            matrices.push(Value::String(h.to_string()));
            count += 1u32;
        }
        let envelope = OutputEnvelope::new(
            "enumerate",
            json!({ "n": n, "m": m, "force": args.force, "cap": args.cap.cap }),
            json!({ "matrices": matrices, "count": count.to_string() }),
            vec![Check::new("count == f", count == expected)],
        );
        emit_json(out, &envelope)?;
        return Ok(exit_for(&envelope));
    }
    for h in enumerate_hnf(n, m)? {
        writeln!(out, "{h}")?;
        count += 1u32;
    }
    writeln!(out, "# count {count}")?;
    Ok(if count == expected {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

pub fn cmd_canonical(args: &CanonicalArgs, out: &mut dyn Write) -> CliResult<i32> {
    let matrix = parse_matrix(&args.matrix)?;
    let lattice = Sublattice::from_rows(&matrix)?;
    let chain = lattice.invariant_chain();
    let envelope = OutputEnvelope::new(
        "canonical",
        json!({ "matrix": matrix }),
        json!({
            "hnf": lattice.canonical(),
            "index": lattice.index().to_string(),
            "chain": chain,
        }),
        vec![Check::new("chain product == index", &chain.product() == lattice.index())],
    );
    if args.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "hnf    {}", lattice.canonical())?;
        writeln!(out, "index  {}", lattice.index())?;
        writeln!(out, "chain  {chain}")?;
    }
    Ok(exit_for(&envelope))
}

pub fn cmd_equivalent(args: &EquivalentArgs, out: &mut dyn Write) -> CliResult<i32> {
    let a = parse_matrix(&args.first)?;
    let b = parse_matrix(&args.second)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        }
        .into());
    }
    let la = Sublattice::from_rows(&a)?;
    let lb = Sublattice::from_rows(&b)?;
    let equal = la.equals(&lb)?;
    let equivalent = la.equivalent(&lb)?;
    let witness = la.equivalence_witness(&lb)?;
    let mut checks = vec![Check::new(
        "witness present iff equivalent",
        witness.is_some() == equivalent,
    )];
    if let Some(w) = &witness {
        checks.push(Check::new("witness maps first onto second", la.is_witness(&lb, w)?));
    }
    let envelope = OutputEnvelope::new(
        "equivalent",
        json!({ "first": a, "second": b }),
        json!({
            "equal": equal,
            "equivalent": equivalent,
            "first_hnf": la.canonical(),
            "second_hnf": lb.canonical(),
            "first_chain": la.invariant_chain(),
            "second_chain": lb.invariant_chain(),
            "witness": witness,
        }),
        checks,
    );
    if args.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "equal       {equal}")?;
        writeln!(out, "equivalent  {equivalent}")?;
        writeln!(out, "chains      {} {}", la.invariant_chain(), lb.invariant_chain())?;
        match &witness {
            Some(w) => writeln!(out, "witness     {w}")?,
            None => writeln!(out, "witness     none")?,
        }
    }
    // the verdict itself never changes the exit code
    Ok(EXIT_OK)
}

fn census_checks(report: &CensusReport) -> Vec<Check> {
    report
        .checks()
        .into_iter()
        .map(|(name, passed)| Check::new(name, passed))
        .collect()
}

pub fn cmd_classify(args: &CensusArgs, out: &mut dyn Write) -> CliResult<i32> {
    let n = args.cell.n as usize;
    let m = args.cell.m;
    let report = census(n, m, args.cap.cap)?;
    let envelope = OutputEnvelope::new(
        "classify",
        json!({ "n": n, "m": m, "cap": args.cap.cap }),
        serde_json::to_value(&report)?,
        census_checks(&report),
    );
    if args.cell.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "n = {n}, m = {m}: {} sublattices in {} classes", report.total_enumerated, report.classes.len())?;
        writeln!(out, "  {:<24} {:>12}  representative", "chain", "size")?;
        for class in &report.classes {
            writeln!(
                out,
                "  {:<24} {:>12}  {}",
                class.chain.to_string(),
                class.size,
                class.representative
            )?;
        }
        write_checks(out, &envelope.checks)?;
    }
    Ok(exit_for(&envelope))
}

#[derive(Debug, Clone, Serialize)]
struct CellSummary {
    n: usize,
    m: u64,
    f: String,
    f_star: String,
    classes: usize,
    checks: Vec<Check>,
    passed: bool,
}

fn verify_cell(n: usize, m: u64, cap: u64) -> Result<CellSummary, Error> {
    let report = bounds_report(n, m)?;
    let census = census(n, m, cap)?;
    let mut checks = count_checks(&report);
    checks.extend(census_checks(&census));
    let passed = checks.iter().all(|c| c.passed);
    Ok(CellSummary {
        n,
        m,
        f: report.f_sum.to_string(),
        f_star: report.f_star.to_string(),
        classes: census.classes.len(),
        checks,
        passed,
    })
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cells: Vec<(usize, u64)> = args
        .n
        .clone()
        .flat_map(|n| args.m.clone().map(move |m| (n as usize, m)))
        .collect();
    let cap = args.cap.cap;
    let mut summaries = cells
        .into_par_iter()
        .map(|(n, m)| verify_cell(n, m, cap))
        .collect::<Result<Vec<_>, _>>()?;
    summaries.sort_by_key(|c| (c.n, c.m));

    let mut checks = Vec::new();
    for name in summaries.first().map(|c| c.checks.clone()).unwrap_or_default() {
        let passed = summaries
            .iter()
            .all(|s| s.checks.iter().any(|c| c.name == name.name && c.passed));
        checks.push(Check::new(format!("all cells: {}", name.name), passed));
    }
    let failed: Vec<_> = summaries.iter().filter(|s| !s.passed).collect();
    let envelope = OutputEnvelope::new(
        "verify",
        json!({
            "n": format!("{}..{}", args.n.start(), args.n.end()),
            "m": format!("{}..{}", args.m.start(), args.m.end()),
            "cap": cap,
        }),
        json!({
            "cells": summaries,
            "cell_count": summaries.len(),
            "failed_cells": failed.len(),
        }),
        checks,
    );
    if args.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "{:>3} {:>5} {:>14} {:>6}  status", "n", "m", "f", "f*")?;
        for s in &summaries {
            let status = if s.passed { "ok" } else { "FAILED" };
            writeln!(out, "{:>3} {:>5} {:>14} {:>6}  {status}", s.n, s.m, s.f, s.f_star)?;
            for c in s.checks.iter().filter(|c| !c.passed) {
                writeln!(out, "      failed: {}", c.name)?;
            }
        }
        writeln!(out, "{} cells, {} failed", summaries.len(), failed.len())?;
    }
    Ok(exit_for(&envelope))
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> CliResult<i32> {
    let a = parse_matrix(&args.first)?;
    let chain = oracle_snf(&a)?;
    let mut result = json!({ "chain": chain });
    if let Some(second) = &args.second {
        let b = parse_matrix(second)?;
        let radius = args.radius.unwrap_or_else(|| sufficient_radius(&a, &b));
        let equal = oracle_equal(&a, &b, PointBox::new(a.dim(), radius)?)?;
        result["equal"] = json!(equal);
        result["radius"] = json!(radius);
    }
    let envelope = OutputEnvelope::new(
        "oracle",
        json!({ "first": a, "second": args.second }),
        result,
        Vec::new(),
    );
    if args.json {
        emit_json(out, &envelope)?;
    } else {
        writeln!(out, "chain  {chain}")?;
        if let Some(eq) = envelope.result.get("equal") {
            writeln!(out, "equal  {eq} (radius {})", envelope.result["radius"])?;
        }
    }
    Ok(EXIT_OK)
}
