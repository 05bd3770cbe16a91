//! Hypergeometric terms as data.
//!
//! A [`Term`] is a product of [`Factor`]s raised to integer powers, each
//! factor a closed-form function of two integer indices `n` and `k`. The
//! same description is evaluated two independent ways: exactly over the
//! rationals (through [`crate::combinat`]) and in `Z/p^m` through p-adic
//! unit/valuation bookkeeping on small integers (see [`ResidueEvaluator`]).

use std::collections::HashMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use thiserror::Error;

use crate::combinat::{self, CombinatError};
use crate::exactnum::{PadicNum, ResidueRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error("factor {0} vanishes but is raised to a negative power")]
    DivisionByZero(String),
    #[error("rising factorial {0} has negative length")]
    NegativeLength(String),
}

/// `c + a*n + b*k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub c: i64,
    pub n: i64,
    pub k: i64,
}

impl Affine {
    pub const fn new(c: i64, n: i64, k: i64) -> Self {
        Affine { c, n, k }
    }

    pub const fn constant(c: i64) -> Self {
        Affine { c, n: 0, k: 0 }
    }

    #[inline]
    pub fn at(self, n: i64, k: i64) -> i64 {
        self.c + self.n * n + self.k * k
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (coef, var) in [(self.n, "n"), (self.k, "k")] {
            match coef {
                0 => {}
                1 => parts.push(var.to_string()),
                -1 => parts.push(format!("-{var}")),
                c => parts.push(format!("{c}{var}")),
            }
        }
        if self.c != 0 || parts.is_empty() {
            parts.push(self.c.to_string());
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(neg) = p.strip_prefix('-') {
                out.push_str(&format!("-{neg}"));
            } else {
                out.push_str(&format!("+{p}"));
            }
        }
        f.write_str(&out)
    }
}

/// One multiplicative building block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Integer polynomial `sum coef * n^i * k^j`.
    Poly(Vec<(i64, u32, u32)>),
    /// `(-1)^e`.
    Sign(Affine),
    /// `base^e`, `e` may be negative.
    Power { base: i64, exp: Affine },
    /// Rising factorial `(num/den)_len`. A negative power with `num/den = 1`
    /// and `len < 0` evaluates to 0.
    Rising { num: Affine, den: i64, len: Affine },
    /// `binomial(top, bottom)`, zero for `bottom < 0`, reflection for `top < 0`.
    Binomial { top: Affine, bottom: Affine },
}

impl Factor {
    pub fn poly(coeffs: &[(i64, u32, u32)]) -> Factor {
        Factor::Poly(coeffs.to_vec())
    }

    /// Linear polynomial `c + a n + b k`.
    pub fn linear(a: Affine) -> Factor {
        Factor::Poly(vec![(a.n, 1, 0), (a.k, 0, 1), (a.c, 0, 0)].into_iter().filter(|t| t.0 != 0).collect())
    }

    pub fn rising(num: i64, den: i64, len: Affine) -> Factor {
        Factor::Rising { num: Affine::constant(num), den, len }
    }

    fn eval_poly(coeffs: &[(i64, u32, u32)], n: i64, k: i64) -> i128 {
        coeffs.iter().map(|&(c, i, j)| i128::from(c) * i128::from(n).pow(i) * i128::from(k).pow(j)).sum()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Poly(coeffs) => {
                let mut s = String::new();
                for (idx, &(c, i, j)) in coeffs.iter().enumerate() {
                    let mono = match (i, j) {
                        (0, 0) => String::new(),
                        (i, 0) => pow_str("n", i),
                        (0, j) => pow_str("k", j),
                        (i, j) => format!("{}{}", pow_str("n", i), pow_str("k", j)),
                    };
                    let body = match (c.abs(), mono.is_empty()) {
                        (a, true) => a.to_string(),
                        (1, false) => mono,
                        (a, false) => format!("{a}{mono}"),
                    };
                    if idx == 0 {
                        s.push_str(if c < 0 { "-" } else { "" });
                    } else {
                        s.push_str(if c < 0 { "-" } else { "+" });
                    }
                    s.push_str(&body);
                }
                write!(f, "({s})")
            }
            Factor::Sign(e) => write!(f, "(-1)^({e})"),
            Factor::Power { base, exp } => write!(f, "({base})^({exp})"),
            Factor::Rising { num, den, len } => {
                if *den == 1 {
                    write!(f, "({num})_({len})")
                } else {
                    write!(f, "(({num})/{den})_({len})")
                }
            }
            Factor::Binomial { top, bottom } => write!(f, "C({top},{bottom})"),
        }
    }
}

fn pow_str(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// A product of factors with integer exponents, optionally forced to 0
/// below the diagonal `n < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<(Factor, i32)>,
    pub zero_below_diagonal: bool,
}

impl Term {
    pub fn new(factors: Vec<(Factor, i32)>) -> Self {
        Term { factors, zero_below_diagonal: false }
    }

    pub fn zero_below_diagonal(mut self) -> Self {
        self.zero_below_diagonal = true;
        self
    }

    fn forced_zero(&self, n: i64, k: i64) -> bool {
        self.zero_below_diagonal && n < k
    }

    /// Exact value at `(n, k)`.
    pub fn eval(&self, n: i64, k: i64) -> Result<Rational, TermError> {
        if self.forced_zero(n, k) {
            return Ok(Rational::new());
        }
        let mut acc = Rational::from(1);
        let mut deferred = None;
        for (factor, power) in &self.factors {
            match exact_factor(factor, *power, n, k) {
                Ok(v) if v == 0 => return Ok(v),
                Ok(v) => acc *= v,
                Err(e) => deferred = deferred.or(Some(e)),
            }
        }
        // a failing factor is only an error if nothing else annihilated the term
        match deferred {
            Some(e) => Err(e),
            None => Ok(acc),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(fac, pow)| if *pow == 1 { fac.to_string() } else { format!("{fac}^{pow}") })
            .collect();
        f.write_str(&parts.join(" * "))?;
        if self.zero_below_diagonal {
            f.write_str("  [0 for n<k]")?;
        }
        Ok(())
    }
}

fn exact_factor(factor: &Factor, power: i32, n: i64, k: i64) -> Result<Rational, TermError> {
    let base: Rational = match factor {
        Factor::Poly(c) => Rational::from(Integer::from(Factor::eval_poly(c, n, k))),
        Factor::Sign(e) => Rational::from(if e.at(n, k).rem_euclid(2) == 0 { 1 } else { -1 }),
        Factor::Power { base, exp } => {
            let e = exp.at(n, k);
            let b = Rational::from(*base);
            return pow_rational(b, i64::from(power) * e, factor);
        }
        Factor::Rising { num, den, len } => {
            let a = Rational::from((num.at(n, k), *den));
            let l = len.at(n, k);
            if power < 0 {
                let r = combinat::recip_pochhammer(&a, l)?;
                return Ok(r.pow(power.unsigned_abs()));
            }
            if l < 0 {
                return Err(TermError::NegativeLength(factor.to_string()));
            }
            combinat::pochhammer(&a, l as u64)
        }
        Factor::Binomial { top, bottom } => {
            let b = bottom.at(n, k);
            if b < 0 {
                Rational::new()
            } else {
                Rational::from(combinat::binomial(top.at(n, k), b as u64))
            }
        }
    };
    pow_rational(base, i64::from(power), factor)
}

fn pow_rational(b: Rational, e: i64, factor: &Factor) -> Result<Rational, TermError> {
    if e >= 0 {
        Ok(b.pow(u32::try_from(e).expect("exponent fits u32")))
    } else if b == 0 {
        Err(TermError::DivisionByZero(factor.to_string()))
    } else {
        Ok(b.recip().pow(u32::try_from(-e).expect("exponent fits u32")))
    }
}

/// Evaluates terms in `Z/p^m` as `p^v * unit`, caching prefix products so
/// that summing a series over consecutive `n` costs linear time.
///
/// Everything here works on machine integers; it shares no arithmetic with
/// the exact path.
pub struct ResidueEvaluator<'r> {
    ring: &'r ResidueRing,
    /// `prefix[(start, step)][j] = prod_{i<j} (start + i*step)`.
    prefix: HashMap<(i64, i64), Vec<PadicNum>>,
}

impl<'r> ResidueEvaluator<'r> {
    pub fn new(ring: &'r ResidueRing) -> Self {
        ResidueEvaluator { ring, prefix: HashMap::new() }
    }

    pub fn ring(&self) -> &ResidueRing {
        self.ring
    }

    /// `prod_{i<len} (start + i*step)`.
    fn progression(&mut self, start: i64, step: i64, len: usize) -> PadicNum {
        let ring = self.ring;
        let table = self.prefix.entry((start, step)).or_insert_with(|| vec![PadicNum::ONE]);
        while table.len() <= len {
            let i = (table.len() - 1) as i64;
            let next = ring.mul(*table.last().unwrap(), ring.from_i64(start + i * step));
            table.push(next);
        }
        table[len]
    }

    fn factorial(&mut self, n: u64) -> PadicNum {
        self.progression(1, 1, n as usize)
    }

    fn binomial(&mut self, top: i64, bottom: i64) -> Option<PadicNum> {
        if bottom < 0 {
            return Some(PadicNum::Zero);
        }
        if top < 0 {
            let b = self.binomial(-top + bottom - 1, bottom)?;
            let sign = if bottom % 2 == 1 { self.ring.from_i64(-1) } else { PadicNum::ONE };
            return Some(self.ring.mul(b, sign));
        }
        if bottom > top {
            return Some(PadicNum::Zero);
        }
        let num = self.factorial(top as u64);
        let d1 = self.factorial(bottom as u64);
        let d2 = self.factorial((top - bottom) as u64);
        let den = self.ring.mul(d1, d2);
        Some(self.ring.mul(num, self.ring.inv(den)?))
    }

    fn factor(&mut self, factor: &Factor, power: i32, n: i64, k: i64) -> Result<PadicNum, TermError> {
        let ring = self.ring;
        let base = match factor {
            Factor::Poly(c) => ring.from_i128(Factor::eval_poly(c, n, k)),
            Factor::Sign(e) => ring.from_i64(if e.at(n, k).rem_euclid(2) == 0 { 1 } else { -1 }),
            Factor::Power { base, exp } => {
                let b = ring.from_i64(*base);
                return ring
                    .pow(b, i64::from(power) * exp.at(n, k))
                    .ok_or_else(|| TermError::DivisionByZero(factor.to_string()));
            }
            Factor::Rising { num, den, len } => {
                let l = len.at(n, k);
                let start = num.at(n, k);
                if l < 0 {
                    if power < 0 && start == *den {
                        return Ok(PadicNum::Zero);
                    }
                    return Err(TermError::NegativeLength(factor.to_string()));
                }
                let prod = self.progression(start, *den, l as usize);
                let scale = ring.pow(ring.from_i64(*den), -l).expect("denominator is nonzero");
                ring.mul(prod, scale)
            }
            Factor::Binomial { top, bottom } => self
                .binomial(top.at(n, k), bottom.at(n, k))
                .ok_or_else(|| TermError::DivisionByZero(factor.to_string()))?,
        };
        ring.pow(base, i64::from(power)).ok_or_else(|| TermError::DivisionByZero(factor.to_string()))
    }

    /// `p^v * unit` form of `term(n, k)`.
    pub fn eval(&mut self, term: &Term, n: i64, k: i64) -> Result<PadicNum, TermError> {
        if term.forced_zero(n, k) {
            return Ok(PadicNum::Zero);
        }
        let mut acc = PadicNum::ONE;
        let mut deferred = None;
        for (factor, power) in &term.factors {
            match self.factor(factor, *power, n, k) {
                Ok(PadicNum::Zero) => return Ok(PadicNum::Zero),
                Ok(v) => acc = self.ring.mul(acc, v),
                Err(e) => deferred = deferred.or(Some(e)),
            }
        }
        match deferred {
            Some(e) => Err(e),
            None => Ok(acc),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, residue, PadicContext, Prime};

    const N: Affine = Affine::new(0, 1, 0);

    fn guo_summand() -> Term {
        Term::new(vec![
            (Factor::linear(Affine::new(1, 4, 0)), 1),
            (Factor::Power { base: -64, exp: N }, -1),
            (Factor::Binomial { top: Affine::new(0, 2, 0), bottom: N }, 3),
        ])
    }

    #[test]
    fn exact_evaluation() {
        let t = guo_summand();
        assert_eq!(t.eval(0, 0).unwrap(), 1);
        assert_eq!(t.eval(1, 0).unwrap(), rat(-5, 8));
        // 9 * 216 / 4096
        assert_eq!(t.eval(2, 0).unwrap(), rat(1944, 4096));
    }

    #[test]
    fn negative_length_conventions() {
        let recip = Term::new(vec![(Factor::rising(1, 1, Affine::new(-1, 1, 0)), -5)]);
        assert_eq!(recip.eval(0, 0).unwrap(), 0);
        let bad = Term::new(vec![(Factor::rising(1, 2, Affine::new(-1, 1, 0)), 1)]);
        assert!(matches!(bad.eval(0, 0), Err(TermError::NegativeLength(_))));
        // annihilated by a later zero factor
        let saved = Term::new(vec![
            (Factor::rising(1, 2, Affine::new(-1, 1, 0)), 1),
            (Factor::rising(1, 1, Affine::new(-1, 1, 0)), -1),
        ]);
        assert_eq!(saved.eval(0, 0).unwrap(), 0);
        let ring = ResidueRing::new(Prime::new(5).unwrap(), 3).unwrap();
        let mut ev = ResidueEvaluator::new(&ring);
        assert_eq!(ev.eval(&saved, 0, 0).unwrap(), PadicNum::Zero);
    }

    #[test]
    fn residue_matches_exact_on_p_integral_terms() {
        let p = Prime::new(7).unwrap();
        let ctx = PadicContext::with_prime(p, 4).unwrap();
        let ring = ResidueRing::new(p, 4).unwrap();
        let mut ev = ResidueEvaluator::new(&ring);
        let half_cubed = Term::new(vec![
            (Factor::Sign(N), 1),
            (Factor::linear(Affine::new(1, 4, 0)), 1),
            (Factor::rising(1, 2, N), 3),
            (Factor::rising(1, 1, N), -3),
        ]);
        for t in [guo_summand(), half_cubed] {
            for n in 0..30 {
                let exact = t.eval(n, 0).unwrap();
                let r = ring.reduce(ev.eval(&t, n, 0).unwrap()).unwrap();
                assert_eq!(residue(&exact, &ctx).unwrap(), r, "n={n} term={t}");
            }
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(guo_summand().to_string(), "(4n+1) * (-64)^(n)^-1 * C(2n,n)^3");
        assert_eq!(Affine::new(-1, 2, -3).to_string(), "2n-3k-1");
        assert_eq!(Factor::poly(&[(10, 2, 0), (6, 1, 0), (1, 0, 0)]).to_string(), "(10n^2+6n+1)");
        assert_eq!(Factor::poly(&[(-2, 0, 1), (3, 0, 0)]).to_string(), "(-2k+3)");
    }
}
