//! The four registered WZ pairs and exact checks of their telescoping
//! relation `F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::term::{Affine, Factor, Term, TermError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairId {
    #[serde(rename = "GZ10N2")]
    Gz10n2,
    #[serde(rename = "GUO64")]
    Guo64,
    #[serde(rename = "GL4K1")]
    Gl4k1,
    #[serde(rename = "Z20N3")]
    Z20n3,
}

impl PairId {
    pub const ALL: [PairId; 4] = [PairId::Gz10n2, PairId::Guo64, PairId::Gl4k1, PairId::Z20n3];

    pub fn as_str(self) -> &'static str {
        match self {
            PairId::Gz10n2 => "GZ10N2",
            PairId::Guo64 => "GUO64",
            PairId::Gl4k1 => "GL4K1",
            PairId::Z20n3 => "Z20N3",
        }
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown WZ pair {s:?} (expected one of GZ10N2, GUO64, GL4K1, Z20N3)"))
    }
}

/// Relates `F(n, 0)` to the summand of the series the pair proves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummandSign {
    Plus,
    /// `F(n, 0) = (-1)^n * summand(n)`.
    Alternating,
}

impl SummandSign {
    pub fn at(self, n: i64) -> i32 {
        match self {
            SummandSign::Plus => 1,
            SummandSign::Alternating if n % 2 != 0 => -1,
            SummandSign::Alternating => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WzPair {
    pub id: PairId,
    pub f: Term,
    pub g: Term,
    /// The series summand as written in the congruence it proves.
    pub summand: Term,
    pub summand_sign: SummandSign,
    /// Defining formulas, in the notation of the source.
    pub anchors: &'static [&'static str],
}

const N: Affine = Affine::new(0, 1, 0);
const K: Affine = Affine::new(0, 0, 1);
const fn aff(c: i64, n: i64, k: i64) -> Affine {
    Affine::new(c, n, k)
}
fn lin(c: i64, n: i64, k: i64) -> Factor {
    Factor::linear(aff(c, n, k))
}
fn binom(top: Affine, bottom: Affine) -> Factor {
    Factor::Binomial { top, bottom }
}
fn power(base: i64, exp: Affine) -> Factor {
    Factor::Power { base, exp }
}

fn gz10n2() -> WzPair {
    let poly = Factor::poly(&[(10, 2, 0), (12, 1, 1), (6, 1, 0), (4, 0, 2), (4, 0, 1), (1, 0, 0)]);
    let f = Term::new(vec![
        (poly, 1),
        (Factor::rising(1, 2, N), 1),
        (Factor::Rising { num: aff(1, 0, 2), den: 2, len: N }, 4),
        (Factor::rising(1, 1, N), -5),
        (Factor::Sign(N), 1),
        (power(2, aff(0, 2, 0)), 1),
    ]);
    let g = Term::new(vec![
        (lin(-1, 1, 2), 1),
        (Factor::rising(1, 2, N), 1),
        (Factor::Rising { num: aff(1, 0, 2), den: 2, len: aff(-1, 1, 0) }, 4),
        (Factor::rising(1, 1, aff(-1, 1, 0)), -5),
        (Factor::Sign(N), 1),
        (power(2, aff(1, 2, 0)), 1),
    ]);
    let summand = Term::new(vec![
        (Factor::rising(1, 2, N), 5),
        (Factor::rising(1, 1, N), -5),
        (Factor::poly(&[(10, 2, 0), (6, 1, 0), (1, 0, 0)]), 1),
        (power(-4, N), 1),
    ]);
    WzPair {
        id: PairId::Gz10n2,
        f,
        g,
        summand,
        summand_sign: SummandSign::Plus,
        anchors: &[
            r"F(n,k)=(10n^2+12nk+6n+4k^2+4k+1)\frac{(1/2)_n(1/2+k)^4_n}{(1)^5_n}(-1)^n2^{2n}",
            r"G(n,k)=(n+2k-1)\frac{(1/2)_n(1/2+k)^4_{n-1}}{(1)^5_{n-1}}(-1)^n2^{2n+1}",
        ],
    }
}

fn guo64() -> WzPair {
    let f = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (lin(1, 4, 0), 1),
        (power(4, aff(0, 3, -1)), -1),
        (binom(aff(0, 2, 0), N), 2),
        (binom(aff(0, 2, 2), aff(0, 1, 1)), 1),
        (binom(aff(0, 1, 1), aff(0, 0, 2)), 1),
        (binom(aff(0, 0, 2), K), -1),
    ])
    .zero_below_diagonal();
    // C(n-1+k, 2k)/(n-k) in cancelled form: (n-k+1)_{2k-1} / (2k)!
    let g = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (lin(-1, 2, 0), 2),
        (binom(aff(-2, 2, 0), aff(-1, 1, 0)), 2),
        (power(2, Affine::constant(1)), -1),
        (power(4, aff(-3, 3, -1)), -1),
        (binom(aff(-2, 2, 2), aff(-1, 1, 1)), 1),
        (Factor::Rising { num: aff(1, 1, -1), den: 1, len: aff(-1, 0, 2) }, 1),
        (Factor::Rising { num: Affine::constant(1), den: 1, len: aff(0, 0, 2) }, -1),
        (binom(aff(0, 0, 2), K), -1),
    ])
    .zero_below_diagonal();
    let summand = Term::new(vec![(lin(1, 4, 0), 1), (power(-64, N), -1), (binom(aff(0, 2, 0), N), 3)]);
    WzPair {
        id: PairId::Guo64,
        f,
        g,
        summand,
        summand_sign: SummandSign::Plus,
        anchors: &[
            r"F(n,k)=\frac{(-1)^{n+k}(4n+1)}{4^{3n-k}}\binom{2n}n^2\frac{\binom{2n+2k}{n+k}\binom{n+k}{2k}}{\binom{2k}k}",
            r"G(n,k)=\frac{(-1)^{n+k}(2n-1)^2\binom{2n-2}{n-1}^2}{2(n-k)4^{3(n-1)-k}}\binom{2(n-1+k)}{n-1+k}\frac{\binom{n-1+k}{2k}}{\binom{2k}k}",
        ],
    }
}

fn gl4k1() -> WzPair {
    let f = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (lin(-1, 4, 0), 1),
        (Factor::rising(-1, 2, N), 2),
        (Factor::rising(-1, 2, aff(0, 1, 1)), 1),
        (Factor::rising(1, 1, N), -2),
        (Factor::rising(1, 1, aff(0, 1, -1)), -1),
        (Factor::rising(-1, 2, K), -2),
    ]);
    let g = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (Factor::poly(&[(2, 0, 0)]), 1),
        (Factor::rising(-1, 2, N), 2),
        (Factor::rising(-1, 2, aff(-1, 1, 1)), 1),
        (Factor::rising(1, 1, aff(-1, 1, 0)), -2),
        (Factor::rising(1, 1, aff(0, 1, -1)), -1),
        (Factor::rising(-1, 2, K), -2),
    ]);
    let summand = Term::new(vec![
        (Factor::Sign(N), 1),
        (lin(-1, 4, 0), 1),
        (Factor::rising(-1, 2, N), 3),
        (Factor::rising(1, 1, N), -3),
    ]);
    WzPair {
        id: PairId::Gl4k1,
        f,
        g,
        summand,
        summand_sign: SummandSign::Plus,
        anchors: &[
            r"F(n,k)=(-1)^{n+k}\frac{(4n-1)(-1/2)_n^2(-1/2)_{n+k}}{(1)_n^2(1)_{n-k}(-1/2)_k^2}",
            r"G(n,k)=(-1)^{n+k}\frac{2(-1/2)_n^2(-1/2)_{n+k-1}}{(1)_{n-1}^2(1)_{n-k}(-1/2)_k^2}",
            r"1/(1)_n=0 for n=-1,-2,...",
        ],
    }
}

fn z20n3() -> WzPair {
    let f = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (lin(3, 20, -2), 1),
        (power(4, aff(0, 5, -1)), -1),
        (binom(aff(0, 2, 0), N), 1),
        (binom(aff(0, 4, 2), aff(0, 2, 1)), 1),
        (binom(aff(0, 2, 1), aff(0, 0, 2)), 1),
        (binom(aff(0, 2, -1), N), 1),
        (binom(aff(0, 0, 2), K), -1),
    ])
    .zero_below_diagonal();
    let g = Term::new(vec![
        (Factor::Sign(aff(0, 1, 1)), 1),
        (power(4, aff(-4, 5, -1)), -1),
        (lin(0, 1, 0), 1),
        (binom(aff(-1, 2, 0), aff(-1, 1, 0)), 1),
        (binom(aff(-2, 4, 2), aff(-1, 2, 1)), 1),
        (binom(aff(-1, 2, 1), aff(0, 0, 2)), 1),
        (binom(aff(-1, 2, -1), aff(-1, 1, 0)), 1),
        (binom(aff(0, 0, 2), K), -1),
    ])
    .zero_below_diagonal();
    let summand = Term::new(vec![
        (Factor::rising(1, 2, N), 1),
        (Factor::rising(1, 2, aff(0, 2, 0)), 1),
        (Factor::rising(1, 1, N), -3),
        (lin(3, 20, 0), 1),
        (power(2, aff(0, 4, 0)), -1),
    ]);
    WzPair {
        id: PairId::Z20n3,
        f,
        g,
        summand,
        summand_sign: SummandSign::Alternating,
        anchors: &[
            r"F(n,k)=\frac{(-1)^{n+k}(20n-2k+3)}{4^{5n-k}}\binom{2n}n\frac{\binom{4n+2k}{2n+k}\binom{2n+k}{2k}\binom{2n-k}{n}}{\binom{2k}k}",
            r"G(n,k)=\frac{(-1)^{n+k}}{4^{5n-4-k}}\frac{n\binom{2n-1}{n-1}\binom{2(2n-1+k)}{2n-1+k}\binom{2n-1+k}{2k}\binom{2n-1-k}{n-1}}{\binom{2k}k}",
        ],
    }
}

/// The registered pair for `id`.
pub fn pair(id: PairId) -> &'static WzPair {
    static REGISTRY: OnceLock<[WzPair; 4]> = OnceLock::new();
    let all = REGISTRY.get_or_init(|| [gz10n2(), guo64(), gl4k1(), z20n3()]);
    &all[id as usize]
}

pub fn eval_f(pair: &WzPair, n: u64, k: u64) -> Result<Rational, TermError> {
    pair.f.eval(n as i64, k as i64)
}

/// `G(n, k)` for `k >= 1`; `G(0, k) = 0` for every registered pair.
pub fn eval_g(pair: &WzPair, n: u64, k: u64) -> Result<Rational, TermError> {
    debug_assert!(k >= 1);
    pair.g.eval(n as i64, k as i64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub n: u64,
    pub k: u64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub pair: PairId,
    pub n_max: u64,
    pub k_max: u64,
    pub cells_checked: u64,
    /// Sorted by `(n, k)`.
    pub violations: Vec<Violation>,
}

impl GridReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `table[n][k] = term(n, k)` for `n in rows`, `k in cols`.
fn table(
    term: &Term,
    rows: std::ops::RangeInclusive<u64>,
    cols: std::ops::RangeInclusive<u64>,
) -> Result<Vec<Vec<Rational>>, TermError> {
    rows.collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| cols.clone().map(|k| term.eval(n as i64, k as i64)).collect())
        .collect()
}

/// Exact check of the telescoping relation on `0 <= n <= n_max`,
/// `1 <= k <= k_max`.
pub fn check_telescoping(pair: &WzPair, n_max: u64, k_max: u64) -> Result<GridReport, TermError> {
    let f = table(&pair.f, 0..=n_max, 0..=k_max)?;
    // column 0 of g is unused padding so that g[n][k] lines up with k
    let g = table(&pair.g, 0..=n_max + 1, 0..=k_max).or_else(|_| {
        (0..=n_max + 1)
            .map(|n| {
                std::iter::once(Ok(Rational::new()))
                    .chain((1..=k_max).map(|k| pair.g.eval(n as i64, k as i64)))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>, TermError>>()
    })?;
    let mut violations = Vec::new();
    for n in 0..=n_max as usize {
        for k in 1..=k_max as usize {
            let lhs = Rational::from(&f[n][k - 1] - &f[n][k]);
            let rhs = Rational::from(&g[n + 1][k] - &g[n][k]);
            if lhs != rhs {
                violations.push(Violation { n: n as u64, k: k as u64, lhs, rhs });
            }
        }
    }
    Ok(GridReport { pair: pair.id, n_max, k_max, cells_checked: (n_max + 1) * k_max, violations })
}

/// `F(n, 0) = summand_sign(n) * summand(n)` for `0 <= n <= n_max`.
pub fn check_summand(pair: &WzPair, n_max: u64) -> Result<GridReport, TermError> {
    let mut violations = Vec::new();
    for n in 0..=n_max {
        let lhs = eval_f(pair, n, 0)?;
        let mut rhs = pair.summand.eval(n as i64, 0)?;
        if pair.summand_sign.at(n as i64) < 0 {
            rhs = -rhs;
        }
        if lhs != rhs {
            violations.push(Violation { n, k: 0, lhs, rhs });
        }
    }
    Ok(GridReport { pair: pair.id, n_max, k_max: 0, cells_checked: n_max + 1, violations })
}

/// Both sides of `sum_{n<=N} F(n,0) = sum_{n<=N} F(n,K) + sum_{k=1}^{K} [G(N+1,k) - G(0,k)]`.
pub fn boundary_sides(pair: &WzPair, big_n: u64, big_k: u64) -> Result<(Rational, Rational), TermError> {
    let mut lhs = Rational::new();
    let mut rhs = Rational::new();
    for n in 0..=big_n {
        lhs += eval_f(pair, n, 0)?;
        rhs += eval_f(pair, n, big_k)?;
    }
    for k in 1..=big_k {
        rhs += eval_g(pair, big_n + 1, k)?;
        rhs -= eval_g(pair, 0, k)?;
    }
    Ok((lhs, rhs))
}

/// The double-telescoped boundary identity at `(N, K)`, checked exactly.
pub fn boundary_identity(pair: &WzPair, big_n: u64, big_k: u64) -> Result<bool, TermError> {
    let (lhs, rhs) = boundary_sides(pair, big_n, big_k)?;
    Ok(lhs == rhs)
}

/// [`boundary_identity`] at every `(N, K)` with `N <= n_max`, `1 <= K <= k_max`,
/// sharing one table of values.
pub fn check_boundary_grid(pair: &WzPair, n_max: u64, k_max: u64) -> Result<GridReport, TermError> {
    let f = table(&pair.f, 0..=n_max, 0..=k_max)?;
    let mut g = Vec::with_capacity(n_max as usize + 2);
    for n in 0..=n_max + 1 {
        let row: Result<Vec<Rational>, TermError> = (1..=k_max).map(|k| eval_g(pair, n, k)).collect();
        g.push(row?);
    }
    let mut violations = Vec::new();
    let mut cells = 0;
    // col_sums[k] = sum_{n<=N} F(n, k), advanced row by row
    let mut col_sums = vec![Rational::new(); k_max as usize + 1];
    for big_n in 0..=n_max as usize {
        for (k, s) in col_sums.iter_mut().enumerate() {
            *s += &f[big_n][k];
        }
        let mut g_edge = Rational::new();
        for big_k in 1..=k_max as usize {
            g_edge += Rational::from(&g[big_n + 1][big_k - 1] - &g[0][big_k - 1]);
            let rhs = Rational::from(&col_sums[big_k] + &g_edge);
            cells += 1;
            if col_sums[0] != rhs {
                violations.push(Violation { n: big_n as u64, k: big_k as u64, lhs: col_sums[0].clone(), rhs });
            }
        }
    }
    Ok(GridReport { pair: pair.id, n_max, k_max, cells_checked: cells, violations })
}
