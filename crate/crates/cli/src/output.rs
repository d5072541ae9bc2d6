//! Serialized forms of the library types.
//!
//! JSON layouts are described by the schemas under `schemas/`. CSV output
//! is comma-separated with a header row and LF line endings; every field is
//! an integer or a bare token, so nothing is quoted.

use std::io::{self, Write};

use clap::ValueEnum;
use psl2z_core::enumerate::{PositiveTriple, SignatureSet};
use psl2z_core::oracle::Verdict;
use psl2z_core::orbits::{Descent, OrbitRep, OrbitReport, OrbitSummary};
use psl2z_core::Signature;
use serde::Serialize;

/// How results are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned, human-readable columns.
    Table,
    /// Comma-separated with a header row.
    Csv,
    /// One JSON document.
    Json,
}

#[derive(Debug, Serialize)]
pub struct SignatureJson {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl From<&Signature> for SignatureJson {
    fn from(s: &Signature) -> Self {
        SignatureJson { n: s.n(), a: s.a(), b: s.b(), c: s.c() }
    }
}

#[derive(Debug, Serialize)]
pub struct RepJson {
    pub kind: &'static str,
    pub members: Vec<SignatureJson>,
}

impl From<&OrbitRep> for RepJson {
    fn from(rep: &OrbitRep) -> Self {
        RepJson {
            kind: if rep.is_pair() { "pair" } else { "triple" },
            members: rep.members().iter().map(SignatureJson::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationJson {
    pub n: u64,
    pub law: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub n: u64,
    pub d: u64,
    pub a_plus: usize,
    pub t_plus: usize,
    pub orbits: u64,
    pub divisor_sum: Option<u64>,
    pub mod4_ok: bool,
    pub violations: Vec<ViolationJson>,
}

impl From<&OrbitReport> for ReportJson {
    fn from(r: &OrbitReport) -> Self {
        ReportJson {
            n: r.n,
            d: r.d,
            a_plus: r.a_plus,
            t_plus: r.t_plus,
            orbits: r.orbits,
            divisor_sum: r.divisor_sum,
            mod4_ok: r.mod4_ok,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson { n: r.n, law: v.law().to_owned(), detail: v.to_string() })
                .collect(),
        }
    }
}

/// One row of the orbit table. The `d` column counts the orbits that hold
/// norm-zero elements, which is `d(n)` for every `n` except `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub t_plus: usize,
    pub d: u64,
    pub orbits: u64,
}

impl From<&OrbitSummary> for TableRow {
    fn from(s: &OrbitSummary) -> Self {
        TableRow { n: s.n, t_plus: s.t_plus, d: s.norm_zero_orbits(), orbits: s.orbits }
    }
}

impl From<&OrbitReport> for TableRow {
    fn from(r: &OrbitReport) -> Self {
        TableRow { n: r.n, t_plus: r.t_plus, d: r.norm_zero_orbits(), orbits: r.orbits }
    }
}

#[derive(Debug, Serialize)]
pub struct SetJson {
    pub n: u64,
    pub kind: &'static str,
    pub elements: Vec<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triples: Option<Vec<Vec<[i64; 3]>>>,
}

fn abc(s: &Signature) -> [i64; 3] {
    [s.a(), s.b(), s.c()]
}

impl SetJson {
    pub fn from_set(set: &SignatureSet) -> Self {
        SetJson {
            n: set.n,
            kind: set.kind.name(),
            elements: set.elements.iter().map(abc).collect(),
            triples: None,
        }
    }

    pub fn from_triples(n: u64, triples: &[PositiveTriple]) -> Self {
        let grouped: Vec<Vec<[i64; 3]>> =
            triples.iter().map(|t| t.members().iter().map(abc).collect()).collect();
        SetJson {
            n,
            kind: "t+",
            elements: grouped.iter().flatten().copied().collect(),
            triples: Some(grouped),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReduceJson {
    pub input: SignatureJson,
    pub class: String,
    pub rep: RepJson,
    pub iterations: u64,
    pub trace: Vec<String>,
    pub path: Vec<SignatureJson>,
}

impl From<&Descent> for ReduceJson {
    fn from(d: &Descent) -> Self {
        ReduceJson {
            input: SignatureJson::from(&d.path[0]),
            class: d.path[0].classify().to_string(),
            rep: RepJson::from(&d.rep),
            iterations: d.iterations,
            trace: d.classes().iter().map(ToString::to_string).collect(),
            path: d.path.iter().map(SignatureJson::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SameOrbitJson {
    pub n: i64,
    pub same: bool,
    pub left: RepJson,
    pub right: RepJson,
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub n: u64,
    pub depth: u32,
    pub balls: usize,
    pub disjoint: bool,
    pub reachability_failures: Vec<SignatureJson>,
    pub enumeration_match: bool,
    pub sampled: usize,
    pub cap_exceeded: bool,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            n: v.n,
            depth: v.depth,
            balls: v.balls,
            disjoint: v.disjoint,
            reachability_failures: v.reachability_failures.iter().map(SignatureJson::from).collect(),
            enumeration_match: v.enumeration_match,
            sampled: v.sampled,
            cap_exceeded: v.cap_exceeded,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub checked: usize,
    pub violations: usize,
    pub failures: Vec<ViolationJson>,
    pub oracle: Vec<VerdictJson>,
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Right-aligned columns separated by two spaces.
pub fn write_aligned(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(&mut header.iter().copied()))?;
    for row in rows {
        writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
    }
    Ok(())
}
