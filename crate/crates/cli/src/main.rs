//! `supercong`: command-line front end for the verification library.
//!
//! Exit codes: 0 when every gating check passes, 1 on a failure or a
//! regression, 2 on usage or configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use supercong::congruences::{
    evaluate_case, find_case, list_cases, Backend, CaseFilter, CheckParams, CheckResult, Status,
};
use supercong::exactnum::Prime;
use supercong::harness::{self, PrimeSelection, ReportFormat, SweepConfig};
use supercong::wz::{self, PairId};

#[derive(Parser)]
#[command(name = "supercong", version, about = "Exact verification of WZ pairs and supercongruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the case catalog.
    List {
        #[arg(long)]
        status: Option<Status>,
        /// Case id pattern, e.g. 'LEM-3.*'.
        #[arg(long)]
        glob: Option<String>,
    },
    /// Evaluate one case.
    Verify {
        #[arg(long = "case")]
        case_id: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        delta: Option<u8>,
        #[arg(long, default_value = "both")]
        backend: Backend,
        /// Family index to check on its own.
        #[arg(long)]
        index: Option<i64>,
        /// Sum up to this index instead of the case's limit.
        #[arg(long)]
        upper: Option<u64>,
        /// Run p = 3 (or any p, r below the case's floor); the result is informational.
        #[arg(long)]
        include_p3: bool,
    },
    /// Check a WZ pair: telescoping grid, boundary identities, summand link.
    WzCheck {
        #[arg(long)]
        pair: PairId,
        #[arg(long, default_value_t = 40)]
        nmax: u64,
        #[arg(long, default_value_t = 40)]
        kmax: u64,
    },
    /// Run a sweep over primes, r and delta.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, conflicts_with = "primes")]
        pmax: Option<u64>,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long)]
        rmax: Option<u32>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        format: Option<ReportFormat>,
        #[arg(long)]
        strict_conjectures: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare a report with a baseline report.
    Regress {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        baseline: PathBuf,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn verdict(r: &CheckResult) -> &'static str {
    match (r.pass, r.informational()) {
        (true, false) => "PASS",
        (false, false) => "FAIL",
        (true, true) => "pass (informational)",
        (false, true) => "fail (informational)",
    }
}

fn print_result(r: &CheckResult) {
    let mut params = format!("p={}", r.p);
    if let Some(rr) = r.r {
        params += &format!(" r={rr}");
    }
    if let Some(d) = r.delta {
        params += &format!(" delta={d}");
    }
    if let Some(i) = r.index {
        params += &format!(" k={i}");
    }
    println!("{} {params}: {}", r.case_id, verdict(r));
    println!("  lhs      = {}", r.lhs);
    println!("  rhs      = {}", r.rhs);
    let at_least = if r.saturated { ">= " } else { "" };
    println!("  v_p(lhs - rhs) = {at_least}{}, claimed {}", r.observed, r.claimed);
    if let Some(s) = r.slack() {
        println!("  slack    = {s}");
    }
    println!("  backend  = {}, {:.3} ms", r.backend.as_str(), r.elapsed.as_secs_f64() * 1e3);
}

fn cmd_list(status: Option<Status>, glob: Option<String>) -> ExitCode {
    let mut filter = CaseFilter { status, glob: None };
    if let Some(g) = glob {
        match CaseFilter::glob(&g) {
            Ok(f) => filter.glob = f.glob,
            Err(e) => return usage_error(format!("bad glob {g:?}: {e}")),
        }
    }
    for case in list_cases(&filter) {
        let mut params = vec!["p"];
        if case.takes_r {
            params.push("r");
        }
        if case.takes_delta {
            params.push("delta");
        }
        if case.is_family() {
            params.push("[index]");
        }
        println!("{:<15} {:<13} ({})", case.id, case.status.as_str(), params.join(", "));
        println!("    {}", case.anchor);
        if case.r_floor > 1 {
            println!("    established for r >= {}", case.r_floor);
        }
        if let Some(pair) = case.pair {
            println!("    WZ pair {pair}");
        }
    }
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    case_id: &str,
    p: u64,
    r: u32,
    delta: Option<u8>,
    backend: Backend,
    index: Option<i64>,
    upper: Option<u64>,
    include_p3: bool,
) -> ExitCode {
    let p = match Prime::new(p) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    if let Err(e) = find_case(case_id) {
        return usage_error(e);
    }
    let params = CheckParams { p, r, delta, upper_override: upper, index, override_floor: include_p3 };
    match evaluate_case(case_id, &params, backend) {
        Ok(result) => {
            print_result(&result);
            if result.gates(false) && !result.pass {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ supercong::congruences::CaseError::BackendMismatch { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_wz_check(id: PairId, nmax: u64, kmax: u64) -> ExitCode {
    if nmax == 0 || kmax == 0 {
        return usage_error("--nmax and --kmax must be at least 1");
    }
    let pair = wz::pair(id);
    println!("{id}");
    for a in pair.anchors {
        println!("    {a}");
    }
    println!("    F = {}", pair.f);
    println!("    G = {}", pair.g);
    let mut ok = true;
    let checks = [
        ("telescoping", wz::check_telescoping(pair, nmax, kmax)),
        ("boundary", wz::check_boundary_grid(pair, nmax, kmax)),
        ("summand", wz::check_summand(pair, nmax)),
    ];
    for (name, report) in checks {
        match report {
            Ok(rep) => {
                let status = if rep.pass() { "ok" } else { "FAILED" };
                println!("{name}: {} cells, {} violations: {status}", rep.cells_checked, rep.violations.len());
                for v in rep.violations.iter().take(5) {
                    println!("    (n={}, k={}): {} != {}", v.n, v.k, v.lhs, v.rhs);
                }
                ok &= rep.pass();
            }
            Err(e) => {
                println!("{name}: evaluation error: {e}");
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    config: Option<PathBuf>,
    pmax: Option<u64>,
    primes: Option<Vec<u64>>,
    rmax: Option<u32>,
    report: Option<PathBuf>,
    format: Option<ReportFormat>,
    strict: bool,
    jobs: Option<usize>,
) -> ExitCode {
    let mut cfg = match config {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => match harness::parse_config(&text) {
                Ok(c) => c,
                Err(e) => return usage_error(format!("{}: {e}", path.display())),
            },
            Err(e) => return usage_error(format!("{}: {e}", path.display())),
        },
        None => SweepConfig::default(),
    };
    if let Some(n) = pmax {
        cfg.primes = PrimeSelection::UpTo(n);
    }
    if let Some(list) = primes {
        cfg.primes = PrimeSelection::List(list);
    }
    if let Some(r) = rmax {
        cfg.r_max = r;
    }
    if report.is_some() {
        cfg.report_path = report;
    }
    if let Some(f) = format {
        cfg.report_format = f;
    }
    cfg.strict_conjectures |= strict;
    if let Some(j) = jobs {
        cfg.jobs = j;
    }
    let result = match harness::run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    for o in &result.outcomes {
        match o {
            harness::Outcome::Checked(r) if !r.pass => {
                let mut at = format!("p={}", r.p);
                if let Some(rr) = r.r {
                    at += &format!(" r={rr}");
                }
                if let Some(d) = r.delta {
                    at += &format!(" delta={d}");
                }
                println!("{:<15} {at}: {} (valuation {}, claimed {})", r.case_id, verdict(r), r.observed, r.claimed);
            }
            harness::Outcome::Checked(_) => {}
            harness::Outcome::Error(e) => println!("{:<15} p={}: error: {}", e.case_id, e.p, e.message),
        }
    }
    let s = result.summary;
    println!(
        "{} checks: {} pass, {} fail, {} informational, {} error ({:.1} s)",
        result.outcomes.len(),
        s.pass,
        s.fail,
        s.informational,
        s.error,
        result.wall_time.as_secs_f64()
    );
    if let Some(path) = &cfg.report_path {
        if let Err(e) = harness::write_report(&result, cfg.report_format, path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if result.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_regress(report: PathBuf, baseline: PathBuf) -> ExitCode {
    let read = |p: &PathBuf| harness::read_report(p);
    let (new, base) = match (read(&report), read(&baseline)) {
        (Ok(n), Ok(b)) => (n, b),
        (Err(e), _) | (_, Err(e)) => return usage_error(e),
    };
    let diff = harness::compare_entries(&new, &base);
    println!("{diff}");
    ExitCode::from(diff.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::List { status, glob } => cmd_list(status, glob),
        Command::Verify { case_id, p, r, delta, backend, index, upper, include_p3 } => {
            cmd_verify(&case_id, p, r, delta, backend, index, upper, include_p3)
        }
        Command::WzCheck { pair, nmax, kmax } => cmd_wz_check(pair, nmax, kmax),
        Command::Sweep { config, pmax, primes, rmax, report, format, strict_conjectures, jobs } => {
            cmd_sweep(config, pmax, primes, rmax, report, format, strict_conjectures, jobs)
        }
        Command::Regress { report, baseline } => cmd_regress(report, baseline),
    }
}
