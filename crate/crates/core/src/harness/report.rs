use std::fmt::Write as _;

use serde::Serialize;

use super::config::{Config, Format};
use crate::field::{rational_to_decimal, Rational};
use crate::wilson::Params;

const WITNESS_DIGITS: usize = 12;

/// Where a check failed and by how much.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub at: String,
    /// Decimal approximation of the offending value, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Witness {
    pub fn new(at: impl Into<String>, value: &Rational) -> Self {
        Witness {
            at: at.into(),
            value: Some(rational_to_decimal(value, WITNESS_DIGITS)),
        }
    }

    pub fn note(at: impl Into<String>) -> Self {
        Witness {
            at: at.into(),
            value: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// A residual that must vanish did.
    ExactZero,
    Nonzero(Witness),
    /// A property other than a vanishing residual held.
    Holds,
    Violated(Witness),
    /// The parameter point is degenerate for this check; carries the factor.
    Skipped(String),
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::ExactZero => "exact_zero",
            Status::Nonzero(_) => "nonzero",
            Status::Holds => "holds",
            Status::Violated(_) => "violated",
            Status::Skipped(_) => "skipped",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Nonzero(_) | Status::Violated(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Status::Nonzero(w) | Status::Violated(w) => Some(w),
            _ => None,
        }
    }
}

/// Parameters as `"p/q"` strings, in the order q, a, b, c, d, e, f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsRecord {
    pub q: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
}

impl From<&Params<Rational>> for ParamsRecord {
    fn from(p: &Params<Rational>) -> Self {
        ParamsRecord {
            q: p.q.to_string(),
            a: p.a.to_string(),
            b: p.b.to_string(),
            c: p.c.to_string(),
            d: p.d.to_string(),
            e: p.e.to_string(),
            f: p.f.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check_id: String,
    pub mode: String,
    pub params: Option<ParamsRecord>,
    /// The index range covered, e.g. `0<=n<=7, 0<=x<=7`.
    pub indices: String,
    pub status: Status,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub exact_zero: usize,
    pub holds: usize,
    pub nonzero: usize,
    pub violated: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.exact_zero + self.holds + self.nonzero + self.violated + self.skipped
    }

    pub fn failures(&self) -> usize {
        self.nonzero + self.violated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    /// Sorted by `check_id`.
    pub checks: Vec<CheckReport>,
    pub config: String,
    pub version: String,
}

impl SuiteReport {
    pub fn new(mut checks: Vec<CheckReport>, config: &Config) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        SuiteReport {
            checks,
            config: config.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for chk in &self.checks {
            match chk.status {
                Status::ExactZero => c.exact_zero += 1,
                Status::Holds => c.holds += 1,
                Status::Nonzero(_) => c.nonzero += 1,
                Status::Violated(_) => c.violated += 1,
                Status::Skipped(_) => c.skipped += 1,
            }
        }
        c
    }

    /// 0 when every check that ran passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.counts().failures() == 0 {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.status.is_failure())
    }
}

#[derive(Serialize)]
struct SkipNote<'a> {
    reason: &'a str,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RecordWitness<'a> {
    Failure(&'a Witness),
    Skip(SkipNote<'a>),
}

#[derive(Serialize)]
struct Record<'a> {
    check_id: &'a str,
    mode: &'a str,
    params: &'a Option<ParamsRecord>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<RecordWitness<'a>>,
    wall_time_ms: u64,
}

fn record_line(c: &CheckReport) -> String {
    let witness = match &c.status {
        Status::Nonzero(w) | Status::Violated(w) => Some(RecordWitness::Failure(w)),
        Status::Skipped(reason) => Some(RecordWitness::Skip(SkipNote { reason })),
        _ => None,
    };
    let rec = Record {
        check_id: &c.check_id,
        mode: &c.mode,
        params: &c.params,
        status: c.status.name(),
        witness,
        wall_time_ms: c.wall_time_ms,
    };
    serde_json::to_string(&rec).expect("records serialize")
}

fn text(report: &SuiteReport) -> String {
    let counts = report.counts();
    let mut out = String::new();
    let _ = writeln!(out, "wilson {}", report.version);
    for line in report.config.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(
        out,
        "# checks: {} (exact_zero {}, holds {}, nonzero {}, violated {}, skipped {})",
        counts.total(),
        counts.exact_zero,
        counts.holds,
        counts.nonzero,
        counts.violated,
        counts.skipped
    );
    let width = report.checks.iter().map(|c| c.check_id.len()).max().unwrap_or(8).max(8);
    let _ = writeln!(out, "{:<width$}  {:<10}  {:>8}  detail", "check", "status", "ms");
    for c in &report.checks {
        let detail = match &c.status {
            Status::Nonzero(w) | Status::Violated(w) => match &w.value {
                Some(v) => format!("at {}: {}", w.at, v),
                None => w.at.clone(),
            },
            Status::Skipped(reason) => reason.clone(),
            _ => c.indices.clone(),
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<10}  {:>8}  {}",
            c.check_id,
            c.status.name(),
            c.wall_time_ms,
            detail
        );
    }
    out
}

/// Serializes a report. Records are one JSON object per line with keys in
/// the order check_id, mode, params, status, witness (failures and skips
/// only), wall_time_ms.
pub fn emit_report(report: &SuiteReport, format: Format) -> Vec<u8> {
    match format {
        Format::Text => text(report).into_bytes(),
        Format::Records => {
            let mut out = String::new();
            for c in &report.checks {
                out.push_str(&record_line(c));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}
