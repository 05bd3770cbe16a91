use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::report::{ErrorRecord, ResultRecord, CSV_COLUMNS};
use super::{Outcome, SweepReport};
use crate::exactnum::Valuation;

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
}

/// Identity of a result across runs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub case_id: String,
    pub p: u64,
    pub r: Option<u32>,
    pub delta: Option<u8>,
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} p={}", self.case_id, self.p)?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        if let Some(d) = self.delta {
            write!(f, " delta={d}")?;
        }
        Ok(())
    }
}

/// The verdict part of a result; timing is deliberately absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub pass: bool,
    /// `None` when the evaluation errored.
    pub observed: Option<Valuation>,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.observed {
            Some(v) => write!(f, "{} (valuation {v})", if self.pass { "pass" } else { "fail" }),
            None => f.write_str("error"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Change {
    pub key: Key,
    pub before: Entry,
    pub after: Entry,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegressionDiff {
    /// Results whose pass flag or observed valuation changed.
    pub regressions: Vec<Change>,
    /// Present now, absent from the baseline; not regressions.
    pub new_cases: Vec<Key>,
    /// Present in the baseline only; not regressions either.
    pub missing: Vec<Key>,
}

impl RegressionDiff {
    pub fn is_clean(&self) -> bool {
        self.regressions.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.is_clean())
    }
}

impl fmt::Display for RegressionDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.regressions {
            writeln!(f, "regression: {}: {} -> {}", c.key, c.before, c.after)?;
        }
        for k in &self.new_cases {
            writeln!(f, "new case: {k}")?;
        }
        for k in &self.missing {
            writeln!(f, "missing: {k}")?;
        }
        write!(
            f,
            "{} regression(s), {} new, {} missing",
            self.regressions.len(),
            self.new_cases.len(),
            self.missing.len()
        )
    }
}

pub fn compare_entries(new: &BTreeMap<Key, Entry>, baseline: &BTreeMap<Key, Entry>) -> RegressionDiff {
    let mut diff = RegressionDiff::default();
    for (key, after) in new {
        match baseline.get(key) {
            Some(before) if before != after => {
                diff.regressions.push(Change { key: key.clone(), before: *before, after: *after })
            }
            Some(_) => {}
            None => diff.new_cases.push(key.clone()),
        }
    }
    diff.missing = baseline.keys().filter(|k| !new.contains_key(*k)).cloned().collect();
    diff
}

fn entries_of(report: &SweepReport) -> BTreeMap<Key, Entry> {
    report
        .outcomes
        .iter()
        .map(|o| match o {
            Outcome::Checked(r) => (
                Key { case_id: r.case_id.to_string(), p: r.p, r: r.r, delta: r.delta },
                Entry { pass: r.pass, observed: Some(r.observed) },
            ),
            Outcome::Error(e) => (
                Key { case_id: e.case_id.to_string(), p: e.p, r: e.r, delta: e.delta },
                Entry { pass: false, observed: None },
            ),
        })
        .collect()
}

/// Diff a fresh report against a baseline file (json-lines or csv).
pub fn compare_baseline(new: &SweepReport, baseline: &Path) -> Result<RegressionDiff, BaselineError> {
    Ok(compare_entries(&entries_of(new), &read_report(baseline)?))
}

/// Parse a report file written by [`super::write_report`], in either format.
pub fn read_report(path: &Path) -> Result<BTreeMap<Key, Entry>, BaselineError> {
    let text = fs::read_to_string(path).map_err(|source| BaselineError::Io { path: path.to_path_buf(), source })?;
    let err = |line: usize, message: String| BaselineError::Parse { path: path.to_path_buf(), line, message };
    if text.trim_start().starts_with('{') {
        parse_json_lines(&text).map_err(|(line, m)| err(line, m))
    } else {
        parse_csv(&text).map_err(|(line, m)| err(line, m))
    }
}

type ParseResult = Result<BTreeMap<Key, Entry>, (usize, String)>;

fn parse_json_lines(text: &str) -> ParseResult {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| (lineno, e.to_string()))?;
        if value.get("meta").is_some() {
            continue;
        }
        if let Some(e) = value.get("error") {
            let e: ErrorRecord = serde_json::from_value(e.clone()).map_err(|e| (lineno, e.to_string()))?;
            out.insert(
                Key { case_id: e.case_id, p: e.p, r: e.r, delta: e.delta },
                Entry { pass: false, observed: None },
            );
            continue;
        }
        let r: ResultRecord = serde_json::from_value(value).map_err(|e| (lineno, e.to_string()))?;
        out.insert(
            Key { case_id: r.case_id, p: r.p, r: r.r, delta: r.delta },
            Entry { pass: r.pass, observed: Some(r.observed_valuation) },
        );
    }
    Ok(out)
}

fn parse_csv(text: &str) -> ParseResult {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| (1, e.to_string()))?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err((1, format!("unexpected header; expected {}", CSV_COLUMNS.join(","))));
    }
    let mut out = BTreeMap::new();
    for (i, row) in reader.records().enumerate() {
        let lineno = i + 2;
        let row = row.map_err(|e| (lineno, e.to_string()))?;
        let field = |n: usize| row.get(n).unwrap_or("");
        let num = |n: usize| -> Result<Option<u64>, (usize, String)> {
            match field(n) {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| (lineno, format!("bad {} {s:?}", CSV_COLUMNS[n]))),
            }
        };
        let key = Key {
            case_id: field(0).to_string(),
            p: num(1)?.ok_or((lineno, "missing p".to_string()))?,
            r: num(2)?.map(|v| v as u32),
            delta: num(3)?.map(|v| v as u8),
        };
        let entry = if field(7) == "error" {
            Entry { pass: false, observed: None }
        } else {
            let observed = field(5).parse::<Valuation>().map_err(|e| (lineno, e.to_string()))?;
            let pass = field(6).parse::<bool>().map_err(|e| (lineno, format!("bad pass flag: {e}")))?;
            Entry { pass, observed: Some(observed) }
        };
        out.insert(key, entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(id: &str) -> Key {
        Key { case_id: id.into(), p: 5, r: Some(1), delta: None }
    }

    #[test]
    fn changes_are_regressions_new_cases_are_not() {
        let pass3 = Entry { pass: true, observed: Some(Valuation::Finite(3)) };
        let fail2 = Entry { pass: false, observed: Some(Valuation::Finite(2)) };
        let base = BTreeMap::from([(key("GUO-64"), pass3)]);
        let new = BTreeMap::from([(key("GUO-64"), fail2), (key("GL-R"), pass3)]);
        let diff = compare_entries(&new, &base);
        assert_eq!(diff.regressions.len(), 1);
        assert_eq!(diff.new_cases, [key("GL-R")]);
        assert_eq!(diff.exit_code(), 1);
        assert!(compare_entries(&base, &base).is_clean());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "{\"meta\":{}}\n{\"case_id\":\"X\"\n";
        assert_eq!(parse_json_lines(text).unwrap_err().0, 2);
        let csv = format!("{}\nGUO-64,5,1,,3,x,true,exact,1/1,1/1,0\n", CSV_COLUMNS.join(","));
        assert_eq!(parse_csv(&csv).unwrap_err().0, 2);
        assert_eq!(parse_csv("a,b\n").unwrap_err().0, 1);
    }
}
