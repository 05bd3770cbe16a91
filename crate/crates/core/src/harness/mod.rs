//! Sweeps over (case, p, r, δ) grids, report files and baseline comparison.

mod baseline;
mod config;
mod report;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::congruences::{
    evaluate_case, list_cases, Backend, CaseFilter, CheckParams, CheckResult, CongruenceCase, Status,
};
use crate::exactnum::{primes_between, Prime};

pub use baseline::{compare_baseline, compare_entries, read_report, BaselineError, Change, Entry, Key, RegressionDiff};
pub use config::parse_config;
pub use report::{render_report, write_report, ReportFormat, CSV_COLUMNS};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSelection {
    /// All primes in `[5, bound]`.
    UpTo(u64),
    List(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub primes: PrimeSelection,
    pub r_max: u32,
    pub deltas: Vec<u8>,
    pub case_glob: Option<String>,
    pub status: Option<Status>,
    pub backend: Backend,
    /// Also run p = 3, below every case's floor; such results are informational.
    pub include_p3: bool,
    pub strict_conjectures: bool,
    #[serde(skip)]
    pub report_path: Option<PathBuf>,
    pub report_format: ReportFormat,
    /// Worker threads; 0 uses one per core.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: PrimeSelection::UpTo(47),
            r_max: 2,
            deltas: vec![1, 2],
            case_glob: None,
            status: None,
            backend: Backend::Both,
            include_p3: false,
            strict_conjectures: false,
            report_path: None,
            report_format: ReportFormat::JsonLines,
            jobs: 0,
        }
    }
}

impl SweepConfig {
    /// The primes swept, ascending, after validation.
    pub fn resolve_primes(&self) -> Result<Vec<Prime>, HarnessError> {
        let mut out = match &self.primes {
            PrimeSelection::UpTo(bound) => primes_between(5, *bound),
            PrimeSelection::List(list) => list
                .iter()
                .map(|&p| Prime::new(p).map_err(|e| HarnessError::ConfigInvalid(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?,
        };
        if self.include_p3 {
            out.push(Prime::new(3).expect("3 is prime"));
        } else if out.iter().any(|p| p.get() == 3) {
            return Err(HarnessError::ConfigInvalid("p = 3 requires include_p3".into()));
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(HarnessError::ConfigInvalid("no primes selected".into()));
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.r_max == 0 {
            return Err(HarnessError::ConfigInvalid("r_max must be at least 1".into()));
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|d| !matches!(d, 1 | 2)) {
            return Err(HarnessError::ConfigInvalid("deltas must be a non-empty subset of {1, 2}".into()));
        }
        self.filter()?;
        self.resolve_primes().map(|_| ())
    }

    pub fn filter(&self) -> Result<CaseFilter, HarnessError> {
        let mut f = CaseFilter { status: self.status, glob: None };
        if let Some(g) = &self.case_glob {
            f.glob =
                Some(glob::Pattern::new(g).map_err(|e| HarnessError::ConfigInvalid(format!("case glob {g:?}: {e}")))?);
        }
        Ok(f)
    }
}

/// One unit of sweep work.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Job {
    pub case_id: &'static str,
    pub p: u64,
    pub r: u32,
    pub delta: Option<u8>,
}

/// A job that produced no result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub case_id: &'static str,
    pub status: Status,
    pub p: u64,
    pub r: Option<u32>,
    pub delta: Option<u8>,
    pub message: String,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Checked(CheckResult),
    Error(JobError),
}

impl Outcome {
    pub fn case_id(&self) -> &'static str {
        match self {
            Outcome::Checked(r) => r.case_id,
            Outcome::Error(e) => e.case_id,
        }
    }

    pub fn result(&self) -> Option<&CheckResult> {
        match self {
            Outcome::Checked(r) => Some(r),
            Outcome::Error(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub informational: usize,
    pub error: usize,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub version: &'static str,
    pub config: SweepConfig,
    /// Sorted by `(case id, p, r, delta)`.
    pub outcomes: Vec<Outcome>,
    pub summary: Summary,
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn results(&self) -> impl Iterator<Item = &CheckResult> {
        self.outcomes.iter().filter_map(Outcome::result)
    }

    /// No gating failures and no errors in gating cases.
    pub fn success(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }
}

fn summarize(outcomes: &[Outcome], strict: bool) -> Summary {
    let mut s = Summary::default();
    for o in outcomes {
        match o {
            Outcome::Checked(r) if !r.gates(strict) => s.informational += 1,
            Outcome::Checked(r) if r.pass => s.pass += 1,
            Outcome::Checked(_) => s.fail += 1,
            Outcome::Error(e) if e.status.is_gating() || (strict && e.status == Status::Conjecture) => s.error += 1,
            Outcome::Error(_) => s.informational += 1,
        }
    }
    s
}

/// Every job admitted by `config`, sorted.
pub fn plan(config: &SweepConfig) -> Result<Vec<Job>, HarnessError> {
    config.validate()?;
    let primes = config.resolve_primes()?;
    let cases = list_cases(&config.filter()?);
    let mut jobs = Vec::new();
    for case in cases {
        for &p in &primes {
            if p.get() < case.p_floor && !(config.include_p3 && p.get() == 3) {
                continue;
            }
            for r in case.r_values(config.r_max) {
                for delta in case.delta_values(&config.deltas) {
                    jobs.push(Job { case_id: case.id, p: p.get(), r, delta });
                }
            }
        }
    }
    jobs.sort();
    Ok(jobs)
}

fn backend_for(case: &CongruenceCase, requested: Backend) -> Backend {
    match requested {
        Backend::Residue if !case.p_integral_series() => Backend::Exact,
        b => b,
    }
}

fn run_job(job: &Job, backend: Backend) -> Outcome {
    let case = crate::congruences::find_case(job.case_id).expect("planned from the catalog");
    let p = Prime::new(job.p).expect("planned from primes");
    let mut params = CheckParams::new(p, job.r);
    params.delta = job.delta;
    params.override_floor = job.p < case.p_floor;
    let first = evaluate_case(job.case_id, &params, backend_for(case, backend));
    // a ring too small for the claim: fall back to exact rather than fail
    let result = match first {
        Err(crate::congruences::CaseError::BackendIneligible { .. }) => {
            evaluate_case(job.case_id, &params, Backend::Exact)
        }
        other => other,
    };
    match result {
        Ok(r) => Outcome::Checked(r),
        Err(e) => Outcome::Error(JobError {
            case_id: case.id,
            status: case.status,
            p: job.p,
            r: case.takes_r.then_some(job.r),
            delta: job.delta,
            message: e.to_string(),
        }),
    }
}

/// Evaluate every admitted job. Individual failures become error outcomes;
/// only configuration problems abort the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, HarnessError> {
    let start = Instant::now();
    let jobs = plan(config)?;
    let backend = config.backend;
    let outcomes: Vec<Outcome> = if config.jobs == 1 {
        jobs.iter().map(|j| run_job(j, backend)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| HarnessError::ConfigInvalid(format!("worker pool: {e}")))?;
        // collect() keeps the planned order, so the report is already sorted
        pool.install(|| jobs.par_iter().map(|j| run_job(j, backend)).collect())
    };
    Ok(SweepReport {
        version: VERSION,
        summary: summarize(&outcomes, config.strict_conjectures),
        config: config.clone(),
        outcomes,
        wall_time: start.elapsed(),
    })
}
