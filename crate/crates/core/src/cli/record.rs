//! Result records and their text, JSON-lines and CSV renderings.

use std::io::{self, Write};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::index::MultiIndex;
use crate::io::{Basis, PolyJson};
use crate::ortho::Warning;
use crate::poly::{Bivariate, FFPoly};

use super::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Warn => "WARN",
            Verdict::Fail => "FAIL",
        }
    }
}

/// A nonzero residual, shown in both bases.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub index: String,
    pub label: String,
    pub ff: PolyJson,
    pub monomial: PolyJson,
}

impl WitnessJson {
    pub fn new(index: &MultiIndex, label: impl Into<String>, p: &FFPoly) -> Self {
        WitnessJson {
            index: index.to_string(),
            label: label.into(),
            ff: PolyJson::encode(p, Basis::Ff),
            monomial: PolyJson::encode(p, Basis::Monomial),
        }
    }
}

/// Witnesses kept per record; `failures` still counts all of them.
const WITNESS_LIMIT: usize = 16;

/// Accumulates one check over a sweep of indices.
pub struct Tally {
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<WitnessJson>,
    pub warnings: Vec<Warning>,
}

impl Tally {
    pub fn new() -> Self {
        Tally {
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    /// Counts a check; records `p` as a witness when nonzero.
    pub fn residual(&mut self, index: &MultiIndex, label: &str, p: &FFPoly) {
        self.checked += 1;
        if !p.is_zero() {
            self.fail_with(index, label, p);
        }
    }

    pub fn bivariate(&mut self, index: &MultiIndex, label: &str, b: &Bivariate) {
        self.checked += 1;
        if b.is_zero() {
            return;
        }
        self.failures += 1;
        for (k, slot) in b.slots().iter().enumerate() {
            if !slot.is_zero() && self.witnesses.len() < WITNESS_LIMIT {
                self.witnesses
                    .push(WitnessJson::new(index, format!("{label} [y^({k})]"), slot));
            }
        }
    }

    /// A failure whose witness is already known to be nonzero.
    pub fn fail_with(&mut self, index: &MultiIndex, label: &str, p: &FFPoly) {
        self.failures += 1;
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(WitnessJson::new(index, label, p));
        }
    }

    /// Keeps a witness without counting a failure.
    pub fn witness(&mut self, index: &MultiIndex, label: &str, p: &FFPoly) {
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(WitnessJson::new(index, label, p));
        }
    }

    pub fn warn(&mut self, w: Warning) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    pub fn warn_all(&mut self, ws: &[Warning]) {
        for &w in ws {
            self.warn(w);
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.failures > 0 {
            Verdict::Fail
        } else if !self.warnings.is_empty() {
            Verdict::Warn
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub check: String,
    pub params: Value,
    pub verdict: Verdict,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<WitnessJson>,
    pub warnings: Vec<Warning>,
    pub rng_seed: u64,
    pub elapsed_ms: f64,
}

/// Shared fields of every record a command emits.
pub struct RecordContext {
    pub command: String,
    pub rng_seed: u64,
}

impl RecordContext {
    pub fn record(
        &self,
        check: &str,
        params: Value,
        tally: Tally,
        started: Instant,
    ) -> ResultRecord {
        ResultRecord {
            command: self.command.clone(),
            check: check.to_string(),
            params,
            verdict: tally.verdict(),
            checked: tally.checked,
            failures: tally.failures,
            witnesses: tally.witnesses,
            warnings: tally.warnings,
            rng_seed: self.rng_seed,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn params_text(params: &Value) -> String {
    match params {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

pub const CSV_HEADER: &str = "check,params,verdict,checked,failures,warnings";

pub fn write_record(out: &mut dyn Write, format: Format, r: &ResultRecord) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(r).expect("serializable")),
        Format::Csv => {
            let warnings: Vec<String> = r.warnings.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "{},\"{}\",{},{},{},{}",
                r.check,
                params_text(&r.params),
                r.verdict.label().to_lowercase(),
                r.checked,
                r.failures,
                warnings.join(";")
            )
        }
        Format::Text => {
            write!(
                out,
                "{} {} [{}] {} checked",
                r.verdict.label(),
                r.check,
                params_text(&r.params),
                r.checked
            )?;
            if r.failures > 0 {
                write!(out, ", {} failed", r.failures)?;
            }
            for w in &r.warnings {
                write!(out, ", warning: {w}")?;
            }
            writeln!(out, " ({:.1} ms)", r.elapsed_ms)?;
            for w in &r.witnesses {
                let ff = w.ff.decode().map(|p| p.to_ff_string()).unwrap_or_default();
                let mono =
                    w.ff.decode()
                        .map(|p| p.to_monomial_string())
                        .unwrap_or_default();
                writeln!(out, "    {} {}: {}  =  {}", w.index, w.label, ff, mono)?;
            }
            Ok(())
        }
    }
}
