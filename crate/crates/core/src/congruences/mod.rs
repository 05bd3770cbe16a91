//! The catalog of congruences and their evaluation.
//!
//! Every case compares a left-hand side (a truncated series, a single
//! quantity, or a family of quantities indexed by `k`) with a right-hand side
//! and scores the pair by `v_p(lhs - rhs)`. Series with p-integral summands
//! can also be summed directly in `Z/p^M`, which is how large `p^r` stay
//! cheap.

mod catalog;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{self, NumError, PadicContext, PadicNum, Prime, ResidueRing, Valuation};
use crate::term::{ResidueEvaluator, Term, TermError};
use crate::wz::PairId;

pub use catalog::catalog;

/// Extra precision carried by the residue backend beyond the claimed
/// exponent, so that observed valuations above the claim are still visible.
pub const RESIDUE_SLACK: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Theorem,
    Known,
    Lemma,
    FactFamily,
    Conjecture,
    Informational,
}

impl Status {
    pub const ALL: [Status; 6] =
        [Status::Theorem, Status::Known, Status::Lemma, Status::FactFamily, Status::Conjecture, Status::Informational];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Theorem => "theorem",
            Status::Known => "known",
            Status::Lemma => "lemma",
            Status::FactFamily => "fact-family",
            Status::Conjecture => "conjecture",
            Status::Informational => "informational",
        }
    }

    /// Conjectures and informational cases never gate an exit code by default.
    pub fn is_gating(self) -> bool {
        !matches!(self, Status::Conjecture | Status::Informational)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Status::ALL.into_iter().find(|st| st.as_str() == s.trim()).ok_or_else(|| format!("unknown status {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Residue,
    Both,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Residue => "residue",
            Backend::Both => "both",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "exact" => Ok(Backend::Exact),
            "residue" => Ok(Backend::Residue),
            "both" => Ok(Backend::Both),
            other => Err(format!("unknown backend {other:?} (expected exact, residue or both)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CaseError {
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("{case} requires p >= {floor}; got p = {p} (pass the floor override to run it anyway)")]
    PrimeBelowFloor { case: String, p: u64, floor: u64 },
    #[error("{case} is only established for r >= {floor}; got r = {r} (pass the floor override to run it anyway)")]
    RBelowFloor { case: String, r: u32, floor: u32 },
    #[error("{case}: {reason}")]
    BadParams { case: String, reason: String },
    #[error("{case} cannot run on the residue backend: {reason}")]
    BackendIneligible { case: String, reason: String },
    #[error("{case}: exact and residue backends disagree ({exact} vs {residue} mod {modulus})")]
    BackendMismatch { case: String, exact: Integer, residue: u64, modulus: u64 },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Parameters of one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckParams {
    pub p: Prime,
    pub r: u32,
    pub delta: Option<u8>,
    /// Sum `n = 0..=upper` instead of the case's own limit.
    pub upper_override: Option<u64>,
    /// For families: check only this index instead of all of them.
    pub index: Option<i64>,
    /// Allow `p` or `r` below the case's floor; such results are informational.
    pub override_floor: bool,
}

impl CheckParams {
    pub fn new(p: Prime, r: u32) -> Self {
        CheckParams { p, r, delta: None, upper_override: None, index: None, override_floor: false }
    }

    pub fn with_delta(mut self, delta: u8) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_index(mut self, index: i64) -> Self {
        self.index = Some(index);
        self
    }

    pub fn with_upper(mut self, upper: u64) -> Self {
        self.upper_override = Some(upper);
        self
    }

    pub fn overriding_floor(mut self) -> Self {
        self.override_floor = true;
        self
    }
}

/// Resolved parameters handed to the case builders.
#[derive(Debug, Clone)]
pub struct Inst {
    pub p: Prime,
    pub r: u32,
    pub delta: u8,
    /// `p^r`.
    pub pr: i64,
}

impl Inst {
    fn new(p: Prime, r: u32, delta: u8) -> Option<Self> {
        let pr = i64::try_from(p.get()).ok()?.checked_pow(r)?;
        // binomials up to ~6p^r must stay in i64 arithmetic
        (pr < (1 << 40)).then_some(Inst { p, r, delta, pr })
    }

    pub fn pu(&self) -> i64 {
        self.p.get() as i64
    }

    /// `(p^r - 1)/2`.
    pub fn half(&self) -> i64 {
        (self.pr - 1) / 2
    }

    /// `p^e` as a rational.
    pub fn p_pow(&self, e: u32) -> Rational {
        Rational::from(self.p.pow(e))
    }

    pub fn p_r(&self) -> Rational {
        Rational::from(self.pr)
    }

    /// `q_p(2)`.
    pub fn q(&self) -> Rational {
        Rational::from(crate::combinat::fermat_quotient(self.p))
    }
}

/// `(-1)^e`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub type RatFn = fn(&Inst) -> Rational;
pub type QuantityFn = fn(&Inst) -> Result<Rational, TermError>;
pub type IndexedFn = fn(&Inst, i64) -> Rational;

/// What a case asserts about `lhs - rhs`.
#[derive(Clone, Copy)]
pub enum Claim {
    /// `v_p(lhs - rhs) >= exponent(p, r)`.
    Exponent(fn(&Inst) -> i64),
    /// `lhs = rhs` exactly.
    Equality,
}

#[derive(Clone)]
pub enum Body {
    /// `sum_{n=0}^{upper} summand(n) ≡ rhs`.
    Series {
        summand: Term,
        upper: fn(&Inst) -> i64,
        rhs: RatFn,
        p_integral: bool,
    },
    Quantity {
        lhs: QuantityFn,
        rhs: RatFn,
    },
    /// One congruence per index in `indices`.
    Family {
        indices: fn(&Inst) -> (i64, i64),
        lhs: IndexedFn,
        rhs: IndexedFn,
    },
}

#[derive(Clone)]
pub struct CongruenceCase {
    pub id: &'static str,
    pub status: Status,
    /// The statement being checked, in TeX-ish notation.
    pub anchor: &'static str,
    pub takes_r: bool,
    pub takes_delta: bool,
    pub p_floor: u64,
    pub r_floor: u32,
    pub claim: Claim,
    pub body: Body,
    /// The WZ pair the statement belongs to. For series cases, `F(n, 0)` of
    /// the pair produces the summand (up to the pair's summand sign).
    pub pair: Option<PairId>,
}

impl fmt::Debug for CongruenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CongruenceCase").field("id", &self.id).field("status", &self.status).finish_non_exhaustive()
    }
}

impl CongruenceCase {
    pub fn is_series(&self) -> bool {
        matches!(self.body, Body::Series { .. })
    }

    pub fn is_family(&self) -> bool {
        matches!(self.body, Body::Family { .. })
    }

    /// Whether the residue backend can evaluate this case at all.
    pub fn p_integral_series(&self) -> bool {
        matches!(self.body, Body::Series { p_integral: true, .. }) && matches!(self.claim, Claim::Exponent(_))
    }

    pub fn claimed(&self, inst: &Inst) -> Valuation {
        match self.claim {
            Claim::Exponent(f) => Valuation::Finite(f(inst)),
            Claim::Equality => Valuation::Infinite,
        }
    }

    /// The summation limit for a series case.
    pub fn upper(&self, inst: &Inst) -> Option<i64> {
        match &self.body {
            Body::Series { upper, .. } => Some(upper(inst)),
            _ => None,
        }
    }

    /// Admissible `r` values up to `r_max`.
    pub fn r_values(&self, r_max: u32) -> Vec<u32> {
        if self.takes_r {
            (self.r_floor..=r_max).collect()
        } else {
            vec![1]
        }
    }

    pub fn delta_values(&self, deltas: &[u8]) -> Vec<Option<u8>> {
        if self.takes_delta {
            deltas.iter().map(|&d| Some(d)).collect()
        } else {
            vec![None]
        }
    }
}

/// Filter for [`list_cases`].
#[derive(Debug, Clone, Default)]
pub struct CaseFilter {
    pub status: Option<Status>,
    pub glob: Option<glob::Pattern>,
}

impl CaseFilter {
    pub fn glob(pattern: &str) -> Result<Self, glob::PatternError> {
        Ok(CaseFilter { status: None, glob: Some(glob::Pattern::new(pattern)?) })
    }

    pub fn status(status: Status) -> Self {
        CaseFilter { status: Some(status), glob: None }
    }

    pub fn matches(&self, case: &CongruenceCase) -> bool {
        self.status.is_none_or(|s| s == case.status) && self.glob.as_ref().is_none_or(|g| g.matches(case.id))
    }
}

/// Catalog entries passing `filter`, sorted by id.
pub fn list_cases(filter: &CaseFilter) -> Vec<&'static CongruenceCase> {
    let mut out: Vec<_> = catalog().iter().filter(|c| filter.matches(c)).collect();
    out.sort_by_key(|c| c.id);
    out
}

pub fn find_case(id: &str) -> Result<&'static CongruenceCase, CaseError> {
    catalog().iter().find(|c| c.id == id).ok_or_else(|| CaseError::UnknownCase(id.to_string()))
}

fn bad(case: &CongruenceCase, reason: impl Into<String>) -> CaseError {
    CaseError::BadParams { case: case.id.to_string(), reason: reason.into() }
}

/// Validate `params` against `case` and build the instance.
fn resolve(case: &CongruenceCase, params: &CheckParams) -> Result<Inst, CaseError> {
    if !case.takes_r && params.r != 1 {
        return Err(bad(case, format!("this case has no r parameter (got r = {})", params.r)));
    }
    if params.r == 0 {
        return Err(bad(case, "r must be at least 1"));
    }
    let delta = match (case.takes_delta, params.delta) {
        (true, Some(d @ (1 | 2))) => d,
        (true, Some(d)) => return Err(bad(case, format!("delta must be 1 or 2 (got {d})"))),
        (true, None) => return Err(bad(case, "delta (1 or 2) is required")),
        (false, Some(_)) => return Err(bad(case, "this case has no delta parameter")),
        (false, None) => 1,
    };
    if params.index.is_some() && !case.is_family() {
        return Err(bad(case, "only family cases take an index"));
    }
    if params.upper_override.is_some() && !case.is_series() {
        return Err(bad(case, "only series cases take a summation limit"));
    }
    if !params.override_floor {
        if params.p.get() < case.p_floor {
            return Err(CaseError::PrimeBelowFloor {
                case: case.id.to_string(),
                p: params.p.get(),
                floor: case.p_floor,
            });
        }
        if params.r < case.r_floor {
            return Err(CaseError::RBelowFloor { case: case.id.to_string(), r: params.r, floor: case.r_floor });
        }
    }
    Inst::new(params.p, params.r, delta).ok_or_else(|| bad(case, "p^r is too large for desk-scale evaluation"))
}

/// A computed side of a congruence.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    /// `value mod p^exponent`.
    Residue {
        value: u64,
        p: u64,
        exponent: u32,
    },
}

impl fmt::Display for Value {
    /// Exact values as `num/den`; residues as `value mod p^e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(x) => f.write_str(&exactnum::format_rational(x)),
            Value::Residue { value, p, exponent } => write!(f, "{value} mod {p}^{exponent}"),
        }
    }
}

/// Backend actually used for a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UsedBackend {
    Exact,
    Residue,
    /// Exact values, with the residue sum checked against them.
    Both,
}

impl UsedBackend {
    pub fn as_str(self) -> &'static str {
        match self {
            UsedBackend::Exact => "exact",
            UsedBackend::Residue => "residue",
            UsedBackend::Both => "both",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub case_id: &'static str,
    pub status: Status,
    pub p: u64,
    /// `None` for cases without an `r` parameter.
    pub r: Option<u32>,
    pub delta: Option<u8>,
    /// For families: the index reported (the one with the lowest valuation).
    pub index: Option<i64>,
    pub lhs: Value,
    pub rhs: Value,
    pub observed: Valuation,
    /// True when the residue backend ran out of precision: the true valuation
    /// is at least `observed`.
    pub saturated: bool,
    pub claimed: Valuation,
    pub pass: bool,
    /// Evaluated outside the statement's hypotheses: below a floor, or with
    /// an overridden summation limit.
    pub outside_hypotheses: bool,
    pub backend: UsedBackend,
    pub elapsed: Duration,
}

impl CheckResult {
    /// Whether this result may fail a run. Conjectures gate only in strict
    /// mode; informational cases and out-of-hypothesis runs never do.
    pub fn gates(&self, strict_conjectures: bool) -> bool {
        !self.outside_hypotheses
            && match self.status {
                Status::Conjecture => strict_conjectures,
                Status::Informational => false,
                _ => true,
            }
    }

    pub fn informational(&self) -> bool {
        !self.gates(false)
    }

    /// `observed - claimed` when both are finite.
    pub fn slack(&self) -> Option<i64> {
        Some(self.observed.finite()? - self.claimed.finite()?)
    }
}

type SeriesParts<'a> = (&'a Term, fn(&Inst) -> i64, RatFn, bool);

fn series_parts(case: &CongruenceCase) -> Option<SeriesParts<'_>> {
    match &case.body {
        Body::Series { summand, upper, rhs, p_integral } => Some((summand, *upper, *rhs, *p_integral)),
        _ => None,
    }
}

fn series_upper(case: &CongruenceCase, inst: &Inst, params: &CheckParams) -> i64 {
    match params.upper_override {
        Some(u) => u as i64,
        None => case.upper(inst).unwrap_or(0),
    }
}

/// `sum_{n=0}^{upper} summand(n)` exactly.
pub fn sum_exact(summand: &Term, upper: i64) -> Result<Rational, TermError> {
    let mut acc = Rational::new();
    for n in 0..=upper {
        acc += summand.eval(n, 0)?;
    }
    Ok(acc)
}

/// `sum_{n=0}^{upper} summand(n)` in `Z/p^m`; `None` if some term is not
/// p-integral.
pub fn sum_residue(summand: &Term, upper: i64, ring: &ResidueRing) -> Result<Option<u64>, TermError> {
    let mut ev = ResidueEvaluator::new(ring);
    let mut acc = 0u64;
    for n in 0..=upper {
        match ev.eval(summand, n, 0)? {
            PadicNum::Scaled { val, .. } if val < 0 => return Ok(None),
            t => acc = ring.add(acc, ring.reduce(t).expect("p-integral term")),
        }
    }
    Ok(Some(acc))
}

/// Exact left-hand side of a series case.
pub fn series_sum_exact(id: &str, params: &CheckParams) -> Result<Rational, CaseError> {
    let case = find_case(id)?;
    let inst = resolve(case, params)?;
    let (summand, ..) = series_parts(case).ok_or_else(|| bad(case, "not a series case"))?;
    Ok(sum_exact(summand, series_upper(case, &inst, params))?)
}

/// Left-hand side of a series case reduced into `Z/p^m` by term-wise
/// accumulation, without building the exact sum.
pub fn series_sum_residue(id: &str, params: &CheckParams, ctx: &PadicContext) -> Result<u64, CaseError> {
    let case = find_case(id)?;
    let inst = resolve(case, params)?;
    if !case.p_integral_series() {
        return Err(CaseError::BackendIneligible {
            case: case.id.to_string(),
            reason: "summand is not p-integral".into(),
        });
    }
    if ctx.prime() != params.p {
        return Err(bad(case, "context prime differs from the case prime"));
    }
    let ring = ResidueRing::new(ctx.prime(), ctx.exponent())?;
    let (summand, ..) = series_parts(case).expect("series case");
    sum_residue(summand, series_upper(case, &inst, params), &ring)?.ok_or_else(|| CaseError::BackendIneligible {
        case: case.id.to_string(),
        reason: "a summand has p in its denominator".into(),
    })
}

/// `residue(series_sum_exact) == series_sum_residue` at `ctx`.
pub fn cross_validate(id: &str, params: &CheckParams, ctx: &PadicContext) -> Result<bool, CaseError> {
    let exact = series_sum_exact(id, params)?;
    let fast = series_sum_residue(id, params, ctx)?;
    Ok(exactnum::residue(&exact, ctx)? == fast)
}

/// Largest usable exponent in `[claimed, claimed + RESIDUE_SLACK]` for a
/// word-sized ring.
fn residue_exponent(p: Prime, claimed: i64) -> Option<u32> {
    let claimed = u32::try_from(claimed.max(1)).ok()?;
    (claimed..=claimed + RESIDUE_SLACK).rev().find(|&m| ResidueRing::new(p, m).is_ok())
}

struct Scored {
    lhs: Rational,
    rhs: Rational,
    observed: Valuation,
    index: Option<i64>,
}

fn score(lhs: Rational, rhs: Rational, p: Prime, index: Option<i64>) -> Scored {
    let observed = exactnum::vp(&Rational::from(&lhs - &rhs), p);
    Scored { lhs, rhs, observed, index }
}

fn eval_exact(case: &CongruenceCase, inst: &Inst, params: &CheckParams) -> Result<Scored, CaseError> {
    let p = inst.p;
    match &case.body {
        Body::Series { summand, rhs, .. } => {
            let lhs = sum_exact(summand, series_upper(case, inst, params))?;
            Ok(score(lhs, rhs(inst), p, None))
        }
        Body::Quantity { lhs, rhs } => Ok(score(lhs(inst)?, rhs(inst), p, None)),
        Body::Family { indices, lhs, rhs } => {
            let (lo, hi) = indices(inst);
            if let Some(i) = params.index {
                if i < lo || i > hi {
                    return Err(bad(case, format!("index {i} outside the admissible range {lo}..={hi}")));
                }
                return Ok(score(lhs(inst, i), rhs(inst, i), p, Some(i)));
            }
            let mut worst: Option<Scored> = None;
            for i in lo..=hi {
                let s = score(lhs(inst, i), rhs(inst, i), p, Some(i));
                if worst.as_ref().is_none_or(|w| s.observed < w.observed) {
                    worst = Some(s);
                }
            }
            // an empty family holds vacuously
            Ok(worst.unwrap_or_else(|| score(Rational::new(), Rational::new(), p, None)))
        }
    }
}

struct ResidueScored {
    lhs: u64,
    rhs: u64,
    exponent: u32,
    observed: u32,
}

fn eval_residue(case: &CongruenceCase, inst: &Inst, params: &CheckParams) -> Result<ResidueScored, CaseError> {
    let ineligible = |reason: &str| CaseError::BackendIneligible { case: case.id.to_string(), reason: reason.into() };
    if !case.p_integral_series() {
        return Err(ineligible("only p-integral series run on the residue backend"));
    }
    let claimed = case.claimed(inst).finite().expect("exponent claim");
    let m = residue_exponent(inst.p, claimed).ok_or_else(|| ineligible("p^m exceeds the word-sized ring"))?;
    let ring = ResidueRing::new(inst.p, m)?;
    let (summand, _, rhs, _) = series_parts(case).expect("series case");
    let lhs = sum_residue(summand, series_upper(case, inst, params), &ring)?
        .ok_or_else(|| ineligible("a summand has p in its denominator"))?;
    let ctx = PadicContext::with_prime(inst.p, m)?;
    let rhs = exactnum::residue(&rhs(inst), &ctx)?.to_u64().expect("residue below p^m");
    let diff = (lhs + ring.modulus() - rhs) % ring.modulus();
    Ok(ResidueScored { lhs, rhs, exponent: m, observed: ring.valuation_of(diff) })
}

/// Evaluate one case.
///
/// `Backend::Both` computes the exact result and additionally checks that the
/// residue backend reproduces its reduction; cases the residue backend cannot
/// handle fall back to exact alone.
pub fn evaluate_case(id: &str, params: &CheckParams, backend: Backend) -> Result<CheckResult, CaseError> {
    let case = find_case(id)?;
    let inst = resolve(case, params)?;
    let start = Instant::now();
    let claimed = case.claimed(&inst);
    let p = inst.p.get();
    let outside_hypotheses = p < case.p_floor || params.r < case.r_floor || params.upper_override.is_some();
    let r = case.takes_r.then_some(params.r);
    let delta = case.takes_delta.then_some(inst.delta);

    let residue_result = |res: ResidueScored| {
        let saturated = res.observed == res.exponent;
        let observed = Valuation::Finite(i64::from(res.observed));
        CheckResult {
            case_id: case.id,
            status: case.status,
            p,
            r,
            delta,
            index: None,
            lhs: Value::Residue { value: res.lhs, p, exponent: res.exponent },
            rhs: Value::Residue { value: res.rhs, p, exponent: res.exponent },
            observed,
            saturated,
            claimed,
            pass: observed >= claimed,
            outside_hypotheses,
            backend: UsedBackend::Residue,
            elapsed: start.elapsed(),
        }
    };

    if backend == Backend::Residue {
        return Ok(residue_result(eval_residue(case, &inst, params)?));
    }

    let exact = eval_exact(case, &inst, params)?;
    let mut used = UsedBackend::Exact;
    if backend == Backend::Both && case.p_integral_series() {
        // residue_exponent fails only for huge p; then exact stands alone
        if let Ok(res) = eval_residue(case, &inst, params) {
            let ctx = PadicContext::with_prime(inst.p, res.exponent)?;
            let want = exactnum::residue(&exact.lhs, &ctx)?;
            if want != res.lhs {
                return Err(CaseError::BackendMismatch {
                    case: case.id.to_string(),
                    exact: want,
                    residue: res.lhs,
                    modulus: ctx.modulus().to_u64().unwrap_or(0),
                });
            }
            used = UsedBackend::Both;
        }
    }
    Ok(CheckResult {
        case_id: case.id,
        status: case.status,
        p,
        r,
        delta,
        index: exact.index,
        pass: exact.observed >= claimed,
        lhs: Value::Exact(exact.lhs),
        rhs: Value::Exact(exact.rhs),
        observed: exact.observed,
        saturated: false,
        claimed,
        outside_hypotheses,
        backend: used,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn catalog_ids_are_unique_and_sorted_listing() {
        let all = list_cases(&CaseFilter::default());
        assert!(all.len() >= 35, "{} cases", all.len());
        let ids: Vec<_> = all.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn list_filters() {
        let conj: Vec<_> = list_cases(&CaseFilter::status(Status::Conjecture)).iter().map(|c| c.id).collect();
        assert_eq!(conj, ["CONJ-10N2"]);
        let bin: Vec<_> = list_cases(&CaseFilter::glob("BIN-3.*").unwrap()).iter().map(|c| c.id).collect();
        assert_eq!(bin, ["BIN-3.10", "BIN-3.11", "BIN-3.4", "BIN-3.5", "BIN-3.6", "BIN-3.7", "BIN-3.9"]);
    }

    #[test]
    fn series_examples() {
        let p5 = CheckParams::new(prime(5), 1);
        assert_eq!(series_sum_exact("GUO-64", &p5).unwrap(), rat(1678635, 2097152));
        assert_eq!(series_sum_exact("GZ-10N2", &p5.clone().with_delta(2)).unwrap(), rat(10575, 2048));
        assert_eq!(series_sum_exact("MAO-I2", &p5).unwrap(), rat(75, 64));
        assert_eq!(series_sum_exact("VH-4K1", &p5).unwrap(), rat(435, 512));
    }

    #[test]
    fn residue_examples() {
        let p5 = CheckParams::new(prime(5), 1);
        let ctx = PadicContext::new(5, 3).unwrap();
        assert_eq!(series_sum_residue("GUO-64", &p5, &ctx).unwrap(), 5);
        let ctx5 = PadicContext::new(5, 5).unwrap();
        assert_eq!(series_sum_residue("GZ-10N2", &p5.clone().with_delta(2), &ctx5).unwrap(), 25);
        let err = series_sum_residue("LEM-2.1", &CheckParams::new(prime(5), 2).with_delta(1), &ctx5);
        assert!(matches!(err, Err(CaseError::BackendIneligible { .. })));
    }

    #[test]
    fn evaluate_examples() {
        let p5 = CheckParams::new(prime(5), 1);
        let r = evaluate_case("VH-4K1", &p5, Backend::Exact).unwrap();
        assert_eq!((r.observed, r.claimed, r.pass), (Valuation::Finite(3), Valuation::Finite(3), true));
        let r = evaluate_case("GUO-64", &p5, Backend::Both).unwrap();
        assert_eq!(r.rhs, Value::Exact(rat(5, 1)));
        assert_eq!(r.observed, Valuation::Finite(3));
        assert_eq!(r.backend, UsedBackend::Both);
        let r = evaluate_case("GL-R", &p5, Backend::Exact).unwrap();
        assert_eq!(r.lhs, Value::Exact(rat(-1335635, 2097152)));
        assert_eq!(r.rhs, Value::Exact(rat(-5, 1)));
        assert!(r.pass);
        let r = evaluate_case("SUN-64-P4", &p5, Backend::Exact).unwrap();
        assert_eq!(r.rhs, Value::Exact(rat(-120, 1)));
        assert_eq!(r.observed, Valuation::Finite(4));
        let r = evaluate_case("MAO-I2", &p5, Backend::Exact).unwrap();
        assert_eq!(r.rhs, Value::Exact(rat(1300, 1)));
        assert_eq!(r.observed, Valuation::Finite(4));
        let r = evaluate_case("Z-20N3", &p5, Backend::Exact).unwrap();
        assert_eq!(r.lhs, Value::Exact(Rational::from((350105460705i64, 137438953472i64))));
        assert_eq!(r.rhs, Value::Exact(rat(15, 1)));
        assert!(r.pass);
        let r = evaluate_case("FACT-INV", &p5.clone().with_index(4), Backend::Exact).unwrap();
        assert_eq!(r.lhs, Value::Exact(rat(-5, 1)));
        assert_eq!(r.rhs, Value::Exact(rat(70, 1)));
        assert_eq!(r.observed, Valuation::Finite(2));
    }

    #[test]
    fn residue_backend_reports_saturation() {
        // MAO-I2-IDENT claims equality, so it is exact-only
        let p5 = CheckParams::new(prime(5), 1);
        assert!(evaluate_case("MAO-I2-IDENT", &p5, Backend::Residue).is_err());
        let r = evaluate_case("MAO-I2-IDENT", &p5, Backend::Both).unwrap();
        assert_eq!(r.observed, Valuation::Infinite);
        assert!(r.pass);
        let r = evaluate_case("GZ-10N2", &p5.clone().with_delta(2), Backend::Residue).unwrap();
        assert_eq!(r.observed, Valuation::Finite(5));
        assert!(!r.saturated);
        let Value::Residue { value, exponent, .. } = r.lhs else { unreachable!() };
        assert_eq!((value % 3125, exponent), (25, 9));
    }

    #[test]
    fn floors_and_parameters() {
        let p3 = CheckParams::new(prime(3), 1).with_delta(2);
        assert!(matches!(evaluate_case("GZ-10N2", &p3, Backend::Exact), Err(CaseError::PrimeBelowFloor { .. })));
        let r = evaluate_case("GZ-10N2", &p3.overriding_floor(), Backend::Exact).unwrap();
        assert_eq!(r.lhs, Value::Exact(rat(-9, 8)));
        assert_eq!(r.observed, Valuation::Finite(4));
        assert!(r.informational());
        let p5 = CheckParams::new(prime(5), 1);
        assert!(matches!(evaluate_case("LEM-3.1", &p5, Backend::Exact), Err(CaseError::RBelowFloor { .. })));
        assert!(matches!(evaluate_case("GZ-10N2", &p5, Backend::Exact), Err(CaseError::BadParams { .. })));
        assert!(matches!(
            evaluate_case("VH-4K1", &CheckParams::new(prime(5), 2), Backend::Exact),
            Err(CaseError::BadParams { .. })
        ));
        assert!(matches!(evaluate_case("NOPE", &p5, Backend::Exact), Err(CaseError::UnknownCase(_))));
    }

    #[test]
    fn upper_override_zero_cross_validates() {
        for case in list_cases(&CaseFilter::default()).into_iter().filter(|c| c.p_integral_series()) {
            let mut params = CheckParams::new(prime(7), 1).with_upper(0);
            if case.takes_delta {
                params.delta = Some(1);
            }
            let ctx = PadicContext::new(7, 3).unwrap();
            assert!(cross_validate(case.id, &params, &ctx).unwrap(), "{}", case.id);
        }
    }

    #[test]
    fn lemma_spot_value() {
        // proved for r >= 2, but the value at r = 1 is a useful spot check
        let r = evaluate_case("LEM-3.3", &CheckParams::new(prime(5), 1).overriding_floor(), Backend::Exact).unwrap();
        assert_eq!(r.rhs, Value::Exact(rat(-220, 1)));
        let Value::Exact(lhs) = &r.lhs else { unreachable!() };
        let ctx = PadicContext::new(5, 3).unwrap();
        assert_eq!(exactnum::residue(lhs, &ctx).unwrap(), 30);
        assert!(r.pass);
        assert!(r.informational());
    }
}
