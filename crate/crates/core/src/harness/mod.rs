//! Sampling, suite orchestration and reports.

mod config;
mod report;
mod sample;
mod suite;

pub use config::{Config, Execution, Format, Mode, Suite};
pub use report::{emit_report, CheckReport, Counts, ParamsRecord, Status, SuiteReport, Witness};
pub use sample::{sample_params, validate_params, Degeneracy, SampleSpec};
pub use suite::{
    run_algebra, run_limits, run_suite, AlgebraSelection, GENERIC_ALGEBRA_SIZE, LIMIT_MAX, META_MARGIN, META_SIZE,
    VANISHING_MARGIN, VANISHING_SIZE, WATSON_MAX,
};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Rational};
use crate::wilson::Params;

/// Reads a parameter point from `key = value` lines (`#` comments). `f`
/// may be omitted, in which case it is solved from `b c d e f = 1`.
pub fn parse_params(text: &str) -> Result<Params<Rational>> {
    let mut vals: [Option<Rational>; 7] = Default::default();
    const KEYS: [&str; 7] = ["q", "a", "b", "c", "d", "e", "f"];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: String| Error::Config(format!("line {}: {m}", lineno + 1));
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad("expected `key = value`".into()))?;
        let k = k.trim();
        let slot = KEYS
            .iter()
            .position(|&name| name == k)
            .ok_or_else(|| bad(format!("unknown parameter {k:?}")))?;
        vals[slot] = Some(parse_rational(v).map_err(|e| bad(e.to_string()))?);
    }
    let [q, a, b, c, d, e, f] = vals;
    let need = |v: Option<Rational>, k: &str| v.ok_or_else(|| Error::Config(format!("missing parameter {k}")));
    let (q, a, b, c, d, e) = (
        need(q, "q")?,
        need(a, "a")?,
        need(b, "b")?,
        need(c, "c")?,
        need(d, "d")?,
        need(e, "e")?,
    );
    match f {
        Some(f) => Params::new(q, a, b, c, d, e, f),
        None => Params::with_dependent_f(q, a, b, c, d, e),
    }
}
