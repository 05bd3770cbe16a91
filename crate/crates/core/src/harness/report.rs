use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, Outcome, SweepReport};
use crate::exactnum::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    JsonLines,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "json-lines" | "jsonl" => Ok(ReportFormat::JsonLines),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?} (expected json-lines or csv)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::JsonLines => "json-lines",
            ReportFormat::Csv => "csv",
        })
    }
}

pub const CSV_COLUMNS: [&str; 11] = [
    "case_id",
    "p",
    "r",
    "delta",
    "claimed_exponent",
    "observed_valuation",
    "pass",
    "backend",
    "lhs",
    "rhs",
    "elapsed_ms",
];

/// One result line. The first eleven fields are the stable report schema;
/// the rest are extras that readers may ignore.
#[derive(Debug, Serialize, Deserialize)]
pub(super) struct ResultRecord {
    pub case_id: String,
    pub p: u64,
    pub r: Option<u32>,
    pub delta: Option<u8>,
    pub claimed_exponent: Valuation,
    pub observed_valuation: Valuation,
    pub pass: bool,
    pub backend: String,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: f64,
    #[serde(default)]
    pub status: Option<String>,
    #[serde(default)]
    pub index: Option<i64>,
    #[serde(default)]
    pub saturated: bool,
    #[serde(default)]
    pub informational: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct ErrorRecord {
    pub case_id: String,
    pub p: u64,
    pub r: Option<u32>,
    pub delta: Option<u8>,
    pub message: String,
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'a str,
    config: &'a super::SweepConfig,
    summary: super::Summary,
    elapsed_ms: f64,
}

fn millis(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn records(outcome: &Outcome) -> Result<ResultRecord, ErrorRecord> {
    match outcome {
        Outcome::Checked(r) => Ok(ResultRecord {
            case_id: r.case_id.to_string(),
            p: r.p,
            r: r.r,
            delta: r.delta,
            claimed_exponent: r.claimed,
            observed_valuation: r.observed,
            pass: r.pass,
            backend: r.backend.as_str().to_string(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            elapsed_ms: millis(r.elapsed),
            status: Some(r.status.to_string()),
            index: r.index,
            saturated: r.saturated,
            informational: r.informational(),
        }),
        Outcome::Error(e) => Err(ErrorRecord {
            case_id: e.case_id.to_string(),
            p: e.p,
            r: e.r,
            delta: e.delta,
            message: e.message.clone(),
        }),
    }
}

/// Serialize a report.
///
/// json-lines: a `{"meta": ...}` line, then one object per result, with
/// failed evaluations as `{"error": ...}` lines. csv: a header row and one
/// row per outcome; failed evaluations have backend `error` and the message
/// in the `lhs` column.
pub fn render_report(report: &SweepReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::JsonLines => {
            let meta = Meta {
                tool: "supercong",
                version: report.version,
                config: &report.config,
                summary: report.summary,
                elapsed_ms: millis(report.wall_time),
            };
            let mut out = serde_json::json!({ "meta": meta }).to_string();
            out.push('\n');
            for o in &report.outcomes {
                let line = match records(o) {
                    Ok(rec) => serde_json::to_string(&rec),
                    Err(err) => serde_json::to_string(&serde_json::json!({ "error": err })),
                };
                out.push_str(&line.expect("records serialize"));
                out.push('\n');
            }
            out
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            let opt = |x: Option<String>| x.unwrap_or_default();
            for o in &report.outcomes {
                let row = match records(o) {
                    Ok(r) => [
                        r.case_id,
                        r.p.to_string(),
                        opt(r.r.map(|v| v.to_string())),
                        opt(r.delta.map(|v| v.to_string())),
                        r.claimed_exponent.to_string(),
                        r.observed_valuation.to_string(),
                        r.pass.to_string(),
                        r.backend,
                        r.lhs,
                        r.rhs,
                        r.elapsed_ms.to_string(),
                    ],
                    Err(e) => [
                        e.case_id,
                        e.p.to_string(),
                        opt(e.r.map(|v| v.to_string())),
                        opt(e.delta.map(|v| v.to_string())),
                        String::new(),
                        String::new(),
                        "false".into(),
                        "error".into(),
                        e.message,
                        String::new(),
                        String::new(),
                    ],
                };
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

pub fn write_report(report: &SweepReport, format: ReportFormat, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, render_report(report, format))
        .map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}
