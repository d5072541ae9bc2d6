//! Command-line front end for `psl2z-core`.
//!
//! Exit status: 0 on success, 1 when a mathematical law was found violated,
//! 2 for usage or input errors.

use std::io::{self, Write};

use clap::{Parser, Subcommand};
use psl2z_core::arith::{Factorizer, SpfSieve};
use psl2z_core::enumerate::{
    a_plus_diagonal, enumerate_a_minus, enumerate_a_plus, enumerate_t_plus, norm_zero_elements,
    SetKind,
};
use psl2z_core::oracle::{oracle_check, Verdict};
use psl2z_core::orbits::{reduce, reduce_traced, summarize_with, verify_report, verify_report_with};
use psl2z_core::Signature;
use rayon::prelude::*;

pub mod output;

use output::{
    csv_writer, write_aligned, write_json, OutputFormat, ReduceJson, RepJson, ReportJson,
    SameOrbitJson, SetJson, TableRow, VerdictJson, VerifyJson, ViolationJson,
};

/// Largest smallest-prime-factor table built for range commands (2 bytes
/// per entry). Values past it are factored by trial division.
const SIEVE_CAP: u64 = 1 << 27;

#[derive(Debug, Parser)]
#[command(
    name = "psl2z",
    version,
    about = "Orbits of PSL(2,Z) acting on (a + sqrt(-n))/c for square-free n",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit count and audit for one modulus.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// One row per square-free n <= max: n, |T+|, d, orbits.
    Table {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// List one of the finite signature sets.
    Enumerate {
        n: u64,
        /// a+, a-, t+, zero or diag.
        #[arg(long = "set", value_parser = parse_set_kind)]
        set: SetKind,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Canonical representative of (a + sqrt(-n))/c, with the descent trace.
    Reduce {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Whether two elements of M(-n) lie in the same orbit.
    SameOrbit {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        a1: i64,
        #[arg(allow_hyphen_values = true)]
        c1: i64,
        #[arg(allow_hyphen_values = true)]
        a2: i64,
        #[arg(allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Audit every square-free n <= max; exit 1 on any violation.
    Verify {
        #[arg(long)]
        max: u64,
        /// Also run the brute-force oracle for each modulus.
        #[arg(long)]
        oracle: bool,
        /// BFS depth for the oracle.
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Random signatures per modulus for the oracle's reachability check.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
}

fn parse_set_kind(s: &str) -> Result<SetKind, String> {
    s.parse::<SetKind>().map_err(str::to_owned)
}

/// Failure of a command.
#[derive(Debug)]
pub enum CliError {
    /// Bad input values (not square-free, not divisible, ...).
    Input(psl2z_core::Error),
    /// Writing output failed.
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<psl2z_core::Error> for CliError {
    fn from(e: psl2z_core::Error) -> Self {
        CliError::Input(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// What a successful command found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Nothing wrong.
    Clean,
    /// At least one law failed.
    Violations,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Clean => 0,
            Outcome::Violations => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs one command, writing its output to `out`.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match *command {
        Command::Count { n, format } => cmd_count(n, format, out),
        Command::Table { max, format } => cmd_table(max, format, out),
        Command::Enumerate { n, set, format } => cmd_enumerate(n, set, format, out),
        Command::Reduce { n, a, c, format } => cmd_reduce(n, a, c, format, out),
        Command::SameOrbit { n, a1, c1, a2, c2, format } => {
            cmd_same_orbit(n, (a1, c1), (a2, c2), format, out)
        }
        Command::Verify { max, oracle, depth, samples, format } => {
            cmd_verify(max, oracle, depth, samples, format, out)
        }
    }
}

fn outcome(clean: bool) -> Outcome {
    if clean {
        Outcome::Clean
    } else {
        Outcome::Violations
    }
}

/// A factorizer suited to every `i^2 + n` with `i <= n/2`, `n <= max`.
fn range_factorizer(max: u64) -> SpfSieve {
    let need = (max / 2).saturating_mul(max / 2).saturating_add(max);
    SpfSieve::new(need.min(SIEVE_CAP))
}

fn squarefree_upto<F: Factorizer + Sync>(max: u64, factorizer: &F) -> Vec<u64> {
    (1..=max)
        .into_par_iter()
        .filter(|&n| factorizer.factorize(n).is_ok_and(|f| f.is_squarefree()))
        .collect()
}

pub fn cmd_count(n: u64, format: OutputFormat, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let report = verify_report(n)?;
    match format {
        OutputFormat::Json => write_json(out, &ReportJson::from(&report))?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.serialize(TableRow::from(&report))?;
            w.flush()?;
        }
        OutputFormat::Table => {
            let divisor_sum = report.divisor_sum.map_or_else(|| "-".to_owned(), |v| v.to_string());
            writeln!(out, "n        {}", report.n)?;
            writeln!(out, "d(n)     {}", report.d)?;
            writeln!(out, "|A+|     {}", report.a_plus)?;
            writeln!(out, "|T+|     {}", report.t_plus)?;
            writeln!(out, "orbits   {}", report.orbits)?;
            writeln!(out, "divsum   {divisor_sum}")?;
            writeln!(out, "mod 4    {}", if report.mod4_ok { "0" } else { "nonzero" })?;
            for v in &report.violations {
                writeln!(out, "violation {}: {v}", v.law())?;
            }
        }
    }
    Ok(outcome(report.is_ok()))
}

/// Rows of the orbit table for every square-free `n <= max`, in order.
pub fn table_rows(max: u64) -> Result<Vec<TableRow>, CliError> {
    let sieve = range_factorizer(max);
    let rows = squarefree_upto(max, &sieve)
        .into_par_iter()
        .map(|n| summarize_with(n, &sieve).map(|s| TableRow::from(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows)
}

pub fn cmd_table(max: u64, format: OutputFormat, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let rows = table_rows(max)?;
    match format {
        OutputFormat::Json => write_json(out, &rows)?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            if rows.is_empty() {
                w.write_record(["n", "t_plus", "d", "orbits"])?;
            }
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![r.n.to_string(), r.t_plus.to_string(), r.d.to_string(), r.orbits.to_string()]
                })
                .collect();
            write_aligned(out, &["n", "|T+|", "d", "orbits"], &cells)?;
        }
    }
    Ok(Outcome::Clean)
}

pub fn cmd_enumerate(
    n: u64,
    kind: SetKind,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    if kind == SetKind::TPlus {
        let triples = enumerate_t_plus(n)?;
        match format {
            OutputFormat::Json => write_json(out, &SetJson::from_triples(n, &triples))?,
            OutputFormat::Csv => {
                let mut w = csv_writer(out);
                w.write_record(["n", "kind", "triple", "a", "b", "c"])?;
                for (i, t) in triples.iter().enumerate() {
                    for s in t.members() {
                        w.write_record([
                            n.to_string(),
                            kind.name().to_owned(),
                            i.to_string(),
                            s.a().to_string(),
                            s.b().to_string(),
                            s.c().to_string(),
                        ])?;
                    }
                }
                w.flush()?;
            }
            OutputFormat::Table => {
                for t in &triples {
                    let members: Vec<String> = t.members().iter().map(ToString::to_string).collect();
                    writeln!(out, "{{{}}}", members.join(","))?;
                }
            }
        }
        return Ok(Outcome::Clean);
    }

    let set = match kind {
        SetKind::APlus => enumerate_a_plus(n)?,
        SetKind::AMinus => enumerate_a_minus(n)?,
        SetKind::NormZero => norm_zero_elements(n)?,
        SetKind::BEqualsC => a_plus_diagonal(n)?,
        SetKind::TPlus => unreachable!(),
    };
    match format {
        OutputFormat::Json => write_json(out, &SetJson::from_set(&set))?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "kind", "a", "b", "c"])?;
            for s in &set.elements {
                w.write_record([
                    n.to_string(),
                    kind.name().to_owned(),
                    s.a().to_string(),
                    s.b().to_string(),
                    s.c().to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            for s in &set.elements {
                writeln!(out, "{s}")?;
            }
        }
    }
    Ok(Outcome::Clean)
}

pub fn cmd_reduce(
    n: u64,
    a: i64,
    c: i64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let s = Signature::new(n, a, c)?;
    let descent = reduce_traced(s);
    match format {
        OutputFormat::Json => write_json(out, &ReduceJson::from(&descent))?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["step", "a", "b", "c", "class"])?;
            for (i, t) in descent.path.iter().enumerate() {
                w.write_record([
                    i.to_string(),
                    t.a().to_string(),
                    t.b().to_string(),
                    t.c().to_string(),
                    t.classify().to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            let trace: Vec<String> = descent.classes().iter().map(ToString::to_string).collect();
            let path: Vec<String> = descent.path.iter().map(ToString::to_string).collect();
            writeln!(out, "input       {s} {}", s.classify())?;
            writeln!(out, "rep         {}", descent.rep)?;
            writeln!(out, "iterations  {}", descent.iterations)?;
            writeln!(out, "path        {}", path.join(" -> "))?;
            writeln!(out, "trace       {}", trace.join(" -> "))?;
        }
    }
    Ok(Outcome::Clean)
}

pub fn cmd_same_orbit(
    n: u64,
    first: (i64, i64),
    second: (i64, i64),
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let s1 = Signature::new(n, first.0, first.1)?;
    let s2 = Signature::new(n, second.0, second.1)?;
    let (r1, r2) = (reduce(s1), reduce(s2));
    let same = r1 == r2;
    match format {
        OutputFormat::Json => write_json(
            out,
            &SameOrbitJson { n: s1.n(), same, left: RepJson::from(&r1), right: RepJson::from(&r2) },
        )?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "a1", "c1", "a2", "c2", "same"])?;
            w.write_record([
                n.to_string(),
                first.0.to_string(),
                first.1.to_string(),
                second.0.to_string(),
                second.1.to_string(),
                same.to_string(),
            ])?;
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(out, "{same}")?;
            writeln!(out, "{s1} -> {r1}")?;
            writeln!(out, "{s2} -> {r2}")?;
        }
    }
    Ok(Outcome::Clean)
}

pub fn cmd_verify(
    max: u64,
    with_oracle: bool,
    depth: u32,
    samples: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let sieve = range_factorizer(max);
    let moduli = squarefree_upto(max, &sieve);
    let reports = moduli
        .par_iter()
        .map(|&n| verify_report_with(n, &sieve))
        .collect::<Result<Vec<_>, _>>()?;
    let verdicts: Vec<Verdict> = if with_oracle {
        moduli
            .par_iter()
            .map(|&n| oracle_check(n, depth, samples))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };

    let mut failures: Vec<ViolationJson> = Vec::new();
    for r in &reports {
        failures.extend(ReportJson::from(r).violations);
    }
    for v in verdicts.iter().filter(|v| !v.passed()) {
        failures.push(ViolationJson { n: v.n, law: "oracle".to_owned(), detail: v.summary() });
    }
    let clean = failures.is_empty();

    match format {
        OutputFormat::Json => write_json(
            out,
            &VerifyJson {
                checked: reports.len(),
                violations: failures.len(),
                failures,
                oracle: verdicts.iter().map(VerdictJson::from).collect(),
            },
        )?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "law", "detail"])?;
            for f in &failures {
                w.serialize(f)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            for f in &failures {
                writeln!(out, "n={} {}: {}", f.n, f.law, f.detail)?;
            }
            writeln!(out, "checked {} moduli, {} violations", reports.len(), failures.len())?;
        }
    }
    Ok(outcome(clean))
}

