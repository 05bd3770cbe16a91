use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercong")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn list_filters_by_glob_and_status() {
    let out = run(&["list", "--glob", "BIN-3.*"]);
    assert_eq!(code(&out), 0);
    let ids: Vec<_> = stdout(&out).lines().filter(|l| l.starts_with("BIN-")).map(String::from).collect();
    assert_eq!(ids.len(), 7, "{ids:?}");

    let out = run(&["list", "--status", "conjecture"]);
    assert!(stdout(&out).starts_with("CONJ-10N2"));
    assert_eq!(code(&run(&["list", "--status", "rumour"])), 2);
}

#[test]
fn verify_reports_and_sets_exit_code() {
    let out = run(&["verify", "--case", "GUO-64", "--p", "5", "--r", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("PASS") && text.contains("1678635/2097152"), "{text}");
    assert!(text.contains("v_p(lhs - rhs) = 3, claimed 3"), "{text}");

    let out = run(&["verify", "--case", "GZ-10N2", "--p", "5", "--r", "5", "--delta", "2", "--backend", "residue"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains(" mod 5^"));
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(code(&run(&["verify", "--case", "NOPE", "--p", "5"])), 2);
    assert_eq!(code(&run(&["verify", "--case", "GUO-64", "--p", "9"])), 2);
    assert_eq!(code(&run(&["verify", "--case", "GUO-64", "--p", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--case", "GZ-10N2", "--p", "5"])), 2);
    assert_eq!(code(&run(&["verify", "--p", "5"])), 2);
}

#[test]
fn outside_hypotheses_is_informational() {
    // fails at r = 1, below the lemma's floor, but does not gate
    let out = run(&["verify", "--case", "LEM-4.1", "--p", "5", "--r", "1", "--include-p3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fail (informational)"), "{}", stdout(&out));
    let out = run(&["verify", "--case", "Z-20N3-RAW", "--p", "5"]);
    assert!(stdout(&out).contains("fail (informational)"));
    assert_eq!(code(&out), 0);
}

#[test]
fn wz_check_passes_for_every_pair() {
    for pair in ["GZ10N2", "guo64", "GL4K1", "Z20N3"] {
        let out = run(&["wz-check", "--pair", pair, "--nmax", "12", "--kmax", "12"]);
        assert_eq!(code(&out), 0, "{pair}: {}", stdout(&out));
        assert!(stdout(&out).contains("telescoping: 156 cells, 0 violations: ok"));
    }
    assert_eq!(code(&run(&["wz-check", "--pair", "XYZ"])), 2);
}

#[test]
fn sweep_writes_a_report_and_regress_compares() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.csv");
    let out = run(&["sweep", "--primes", "5,7", "--rmax", "1", "--format", "csv", "--report", base.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("0 fail"));
    let text = fs::read_to_string(&base).unwrap();
    assert!(text.starts_with("case_id,p,r,delta,claimed_exponent,observed_valuation,pass,backend,lhs,rhs,elapsed_ms"));

    let same = run(&["regress", "--report", base.to_str().unwrap(), "--baseline", base.to_str().unwrap()]);
    assert_eq!(code(&same), 0);

    // flip one passing row in a copy
    let flipped = dir.path().join("new.csv");
    let mut done = false;
    let rows: Vec<String> = text
        .lines()
        .map(|l| {
            if !done && l.starts_with("GL-R,") {
                done = true;
                l.replacen(",true,", ",false,", 1)
            } else {
                l.to_string()
            }
        })
        .collect();
    fs::write(&flipped, rows.join("\n")).unwrap();
    let diff = run(&["regress", "--report", flipped.to_str().unwrap(), "--baseline", base.to_str().unwrap()]);
    assert_eq!(code(&diff), 1);
    assert!(stdout(&diff).contains("regression: GL-R"), "{}", stdout(&diff));
}

#[test]
fn sweep_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "pmax = 11\nflavour = strange\n").unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&run(&["sweep", "--config", dir.path().join("missing.conf").to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["sweep", "--primes", "4,5"])), 2);
    assert_eq!(code(&run(&["sweep", "--rmax", "0"])), 2);
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ok.conf");
    let report = dir.path().join("r.jsonl");
    fs::write(&cfg, format!("primes = 5\nr_max = 1\ncase_glob = WOLST-*\nreport_path = {}\n", report.display()))
        .unwrap();
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("3 checks: 3 pass"), "{}", stdout(&out));
    assert_eq!(fs::read_to_string(&report).unwrap().lines().count(), 4);
}
