use std::path::PathBuf;

use super::{HarnessError, PrimeSelection, SweepConfig};

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("{key}: cannot parse {s:?}")))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("{key}: expected true or false, got {value:?}")),
    }
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("{key}: cannot parse {value:?}"))
}

/// Parse a flat `key = value` config, starting from the defaults.
///
/// Keys mirror [`SweepConfig`]: `primes` (list), `pmax`, `r_max`, `deltas`,
/// `case_glob`, `status`, `backend`, `include_p3`, `strict_conjectures`,
/// `report_path`, `report_format`, `jobs`. `#` starts a comment. Unknown
/// keys are errors.
pub fn parse_config(text: &str) -> Result<SweepConfig, HarnessError> {
    let mut cfg = SweepConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |m: String| HarnessError::ConfigInvalid(format!("line {}: {m}", i + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| fail(format!("expected key = value, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let set: Result<(), String> = (|| {
            match key {
                "primes" => cfg.primes = PrimeSelection::List(parse_list(key, value)?),
                "pmax" => cfg.primes = PrimeSelection::UpTo(parse_one(key, value)?),
                "r_max" => cfg.r_max = parse_one(key, value)?,
                "deltas" => cfg.deltas = parse_list(key, value)?,
                "case_glob" => cfg.case_glob = Some(value.to_string()),
                "status" => cfg.status = Some(value.parse()?),
                "backend" => cfg.backend = value.parse()?,
                "include_p3" => cfg.include_p3 = parse_bool(key, value)?,
                "strict_conjectures" => cfg.strict_conjectures = parse_bool(key, value)?,
                "report_path" => cfg.report_path = Some(PathBuf::from(value)),
                "report_format" => cfg.report_format = value.parse()?,
                "jobs" => cfg.jobs = parse_one(key, value)?,
                _ => return Err(format!("unknown key {key:?}")),
            }
            Ok(())
        })();
        set.map_err(fail)?;
    }
    cfg.validate()?;
    Ok(cfg)
}
