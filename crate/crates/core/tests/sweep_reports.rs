use std::fs;

use serde_json::Value as Json;

use supercong::harness::{
    compare_baseline, compare_entries, parse_config, read_report, render_report, run_sweep, write_report,
    BaselineError, PrimeSelection, ReportFormat, SweepConfig, CSV_COLUMNS,
};

fn small(jobs: usize) -> SweepConfig {
    SweepConfig { primes: PrimeSelection::List(vec![5, 7, 11]), r_max: 2, jobs, ..SweepConfig::default() }
}

fn json_lines(text: &str) -> Vec<Json> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn without_timing(mut lines: Vec<Json>) -> Vec<Json> {
    for v in &mut lines {
        let obj = v.as_object_mut().unwrap();
        obj.remove("elapsed_ms");
        if let Some(Json::Object(meta)) = obj.get_mut("meta") {
            meta.remove("elapsed_ms");
            if let Some(Json::Object(cfg)) = meta.get_mut("config") {
                cfg.remove("jobs");
            }
        }
    }
    lines
}

#[test]
fn reports_are_deterministic_and_thread_count_independent() {
    let render =
        |jobs| without_timing(json_lines(&render_report(&run_sweep(&small(jobs)).unwrap(), ReportFormat::JsonLines)));
    let first = render(0);
    assert_eq!(first, render(0));
    assert_eq!(first, render(1));
    assert_eq!(first, render(3));
}

#[test]
fn json_lines_schema() {
    let report = run_sweep(&small(0)).unwrap();
    assert!(report.success(), "{:?}", report.summary);
    let lines = json_lines(&render_report(&report, ReportFormat::JsonLines));
    assert_eq!(lines.len(), report.outcomes.len() + 1);
    let meta = &lines[0]["meta"];
    assert_eq!(meta["tool"], "supercong");
    assert_eq!(meta["summary"]["fail"], 0);
    assert_eq!(meta["config"]["r_max"], 2);
    for line in &lines[1..] {
        for col in CSV_COLUMNS {
            assert!(line.get(col).is_some(), "{col} missing from {line}");
        }
    }
    // r is null exactly for cases without an r parameter
    let vh = lines.iter().find(|l| l["case_id"] == "VH-4K1").unwrap();
    assert!(vh["r"].is_null() && vh["delta"].is_null());
    let gz = lines.iter().find(|l| l["case_id"] == "GZ-10N2").unwrap();
    assert_eq!((gz["r"].as_u64(), gz["delta"].as_u64()), (Some(1), Some(1)));
    // equality claims report an infinite valuation as a token
    let ident = lines.iter().find(|l| l["case_id"] == "MAO-I2-IDENT").unwrap();
    assert_eq!((&ident["claimed_exponent"], &ident["observed_valuation"]), (&Json::from("inf"), &Json::from("inf")));
}

#[test]
fn csv_schema() {
    let report = run_sweep(&SweepConfig { case_glob: Some("MAO-*".into()), ..small(1) }).unwrap();
    let text = render_report(&report, ReportFormat::Csv);
    let mut rows = text.lines();
    assert_eq!(rows.next().unwrap(), CSV_COLUMNS.join(","));
    let ident: Vec<&str> = rows.find(|r| r.starts_with("MAO-I2-IDENT,")).unwrap().split(',').collect();
    assert_eq!((ident[4], ident[5], ident[6]), ("inf", "inf", "true"));
}

#[test]
fn regress_against_own_output_is_clean_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_sweep(&small(0)).unwrap();
    for (name, format) in [("base.jsonl", ReportFormat::JsonLines), ("base.csv", ReportFormat::Csv)] {
        let path = dir.path().join(name);
        write_report(&report, format, &path).unwrap();
        let diff = compare_baseline(&report, &path).unwrap();
        assert!(diff.is_clean() && diff.new_cases.is_empty() && diff.missing.is_empty(), "{name}: {diff}");
        assert_eq!(read_report(&path).unwrap().len(), report.outcomes.len());
    }
}

#[test]
fn regress_detects_a_flipped_result() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_sweep(&small(0)).unwrap();
    let base = dir.path().join("base.jsonl");
    write_report(&report, ReportFormat::JsonLines, &base).unwrap();

    // a doctored "new" report: one result now fails, one is gone
    let text = fs::read_to_string(&base).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let target = lines.iter().position(|l| l.contains("\"case_id\":\"GUO-64\"")).unwrap();
    lines[target] = lines[target].replace("\"pass\":true", "\"pass\":false");
    let dropped = lines.iter().rposition(|l| l.contains("\"case_id\":\"VH-4K1\"")).unwrap();
    lines.remove(dropped);
    let new = dir.path().join("new.jsonl");
    fs::write(&new, lines.join("\n")).unwrap();

    let diff = compare_entries(&read_report(&new).unwrap(), &read_report(&base).unwrap());
    assert_eq!(diff.regressions.len(), 1);
    assert_eq!(diff.regressions[0].key.case_id, "GUO-64");
    assert_eq!(diff.missing.len(), 1);
    assert_eq!(diff.exit_code(), 1);
    // the reverse direction: the dropped line shows up as new, the flip is still a change
    let back = compare_entries(&read_report(&base).unwrap(), &read_report(&new).unwrap());
    assert_eq!((back.regressions.len(), back.new_cases.len()), (1, 1));
}

#[test]
fn empty_sweep_renders_and_reads_back() {
    let report = run_sweep(&SweepConfig { case_glob: Some("NO-SUCH-*".into()), ..small(1) }).unwrap();
    assert!(report.outcomes.is_empty() && report.success());
    let dir = tempfile::tempdir().unwrap();
    for (name, format) in [("e.jsonl", ReportFormat::JsonLines), ("e.csv", ReportFormat::Csv)] {
        let path = dir.path().join(name);
        write_report(&report, format, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 1);
        assert!(read_report(&path).unwrap().is_empty());
    }
}

#[test]
fn malformed_baseline_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    fs::write(&path, "{\"meta\":{}}\n{\"case_id\":\"X\",\"p\":5}\n").unwrap();
    match read_report(&path) {
        Err(BaselineError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(read_report(&dir.path().join("absent.csv")), Err(BaselineError::Io { .. })));
}

#[test]
fn config_file_drives_the_sweep() {
    let cfg = parse_config("primes = 5, 7\nr_max = 1\ncase_glob = GL-*\njobs = 1\n").unwrap();
    let report = run_sweep(&cfg).unwrap();
    let ids: Vec<_> = report.results().map(|r| (r.case_id, r.p)).collect();
    assert_eq!(ids, [("GL-4K1-P4", 5), ("GL-4K1-P4", 7), ("GL-R", 5), ("GL-R", 7)]);
}
