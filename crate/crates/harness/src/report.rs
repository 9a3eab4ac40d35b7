//! Report envelope and serialization. Output is deterministic: no timestamps, no
//! hash-map iteration, records in input order.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::experiments::{DeformRecord, StabilityReport};

pub const SCHEMA: &str = "fpure-report/1";

/// Exit status for theorem-consistency failures.
pub const EXIT_INCONSISTENT: u8 = 3;
/// Exit status when some computation hit its budget.
pub const EXIT_BUDGET: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub kind: String,
    pub seed: Option<u64>,
    pub deform: Vec<DeformRecord>,
    pub stability: Vec<StabilityReport>,
    /// Free-form records of the single-shot commands (`gb`, `fpure`, ...).
    pub records: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(kind: &str, seed: Option<u64>) -> Self {
        Self {
            schema: SCHEMA,
            kind: kind.to_string(),
            seed,
            deform: Vec::new(),
            stability: Vec::new(),
            records: Vec::new(),
        }
    }

    /// 3 on a theorem-consistency failure or a mismatch with the expected values,
    /// 2 when a scan is incomplete, 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        let deform_bad = self
            .deform
            .iter()
            .any(|r| r.status.is_failure() || !r.expected_mismatches.is_empty());
        let scan_bad = self.stability.iter().any(|s| {
            s.shortcut_failures() > 0 || s.levels.iter().any(|l| !l.cross_validation_failures.is_empty())
        });
        if deform_bad || scan_bad {
            EXIT_INCONSISTENT
        } else if self.stability.iter().any(|s| s.incomplete) {
            EXIT_BUDGET
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| HarnessError::Usage(format!("csv: {e}"));
        if !self.stability.is_empty() {
            w.write_record([
                "ring",
                "p",
                "e",
                "n",
                "epsilon",
                "fpure",
                "hypothesis",
                "literal_hypothesis",
                "shortcut_equal",
                "monotone_anomaly",
            ])
            .map_err(csv_err)?;
            for s in &self.stability {
                let anomaly = !s.monotonicity_anomalies.is_empty();
                for l in &s.levels {
                    for r in &l.results {
                        w.write_record([
                            s.name.clone(),
                            s.p.to_string(),
                            s.e.to_string(),
                            l.n.to_string(),
                            r.epsilon.clone(),
                            opt(r.fpure),
                            opt(r.hypothesis),
                            opt(r.literal_hypothesis),
                            opt(r.shortcut_equal),
                            anomaly.to_string(),
                        ])
                        .map_err(csv_err)?;
                    }
                }
            }
        } else if !self.deform.is_empty() {
            w.write_record([
                "ring",
                "p",
                "f",
                "quotient_fpure",
                "ring_fpure",
                "index",
                "quotient_index",
                "index_divides",
                "status",
                "expected_mismatches",
            ])
            .map_err(csv_err)?;
            for d in &self.deform {
                w.write_record([
                    d.name.clone(),
                    d.p.to_string(),
                    d.f.clone(),
                    d.quotient_fpure.to_string(),
                    d.ring_fpure.to_string(),
                    opt(d.index),
                    opt(d.quotient_index),
                    opt(d.index_divides),
                    status_name(d),
                    d.expected_mismatches.join("; "),
                ])
                .map_err(csv_err)?;
            }
        } else {
            w.write_record(["kind", "record"]).map_err(csv_err)?;
            for r in &self.records {
                w.write_record([self.kind.clone(), r.to_string()]).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::Usage(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.kind, self.schema);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for d in &self.deform {
            let _ = writeln!(
                out,
                "{:<24} p={:<2} quotient_fpure={:<5} fpure={:<5} index={}/{} {}",
                d.name,
                d.p,
                d.quotient_fpure,
                d.ring_fpure,
                opt(d.index),
                opt(d.quotient_index),
                status_name(d)
            );
            if !d.missing.is_empty() {
                let _ = writeln!(out, "    unverified hypotheses: {}", d.missing.join(", "));
            }
            for m in &d.expected_mismatches {
                let _ = writeln!(out, "    MISMATCH {m}");
            }
        }
        for s in &self.stability {
            let _ = writeln!(out, "{} p={} e={} f={} seed={}", s.name, s.p, s.e, s.f, s.seed);
            for l in &s.levels {
                let _ = writeln!(
                    out,
                    "  N={} samples={} fpure={} failures={} shortcut={}/{} errors={}",
                    l.n,
                    l.samples,
                    l.fpure_count,
                    l.failures.len(),
                    l.shortcut_checked - l.shortcut_failures.len(),
                    l.shortcut_checked,
                    l.errors
                );
            }
            let _ = writeln!(
                out,
                "  minimal stable N (sampled estimate): {}",
                s.minimal_stable_n.map_or("none".into(), |n| n.to_string())
            );
            if s.incomplete {
                let _ = writeln!(out, "  INCOMPLETE: some samples hit the computation budget");
            }
            if let Some(note) = &s.shortcut_note {
                let _ = writeln!(out, "  shortcut: {note}");
            }
            for a in &s.monotonicity_anomalies {
                let _ = writeln!(out, "  ANOMALY {a}");
            }
        }
        for r in &self.records {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(r).expect("records serialize"));
        }
        out
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn status_name(d: &DeformRecord) -> String {
    serde_json::to_value(d.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<()> {
    let text = report.render(format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
