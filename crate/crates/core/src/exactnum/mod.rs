//! Exact integers and rationals, p-adic valuation and reduction modulo `p^m`.
//!
//! Rationals are GMP-backed (`rug`), which keeps them in canonical form
//! (positive denominator, coprime numerator and denominator, zero as `0/1`)
//! after every operation.

mod ring;

pub use ring::{PadicNum, ResidueRing};

use std::cmp::Ordering;

use std::fmt;
use std::str::FromStr;

pub use rug::{Integer, Rational};

use rug::ops::Pow;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus exponent must be positive")]
    ZeroExponent,
    #[error("value has p in its denominator (valuation {0}); use the exact backend")]
    PNotIntegral(i64),
    #[error("modulus {p}^{m} does not fit the residue backend word size")]
    ModulusTooLarge { p: u64, m: u32 },
    #[error("cannot parse valuation from {0:?}")]
    BadValuation(String),
}

/// An odd prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, NumError> {
        if p >= 3 && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(NumError::NotOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_integer(self) -> Integer {
        Integer::from(self.0)
    }

    /// `p^e` as an exact integer.
    pub fn pow(self, e: u32) -> Integer {
        Integer::from(self.0).pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All odd primes in `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<Prime> {
    (lo.max(3)..=hi).filter_map(|n| Prime::new(n).ok()).collect()
}

/// A p-adic valuation. `Infinite` is the valuation of zero and compares
/// greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= m`.
    pub fn at_least(self, m: i64) -> bool {
        self >= Valuation::Finite(m)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Valuation {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(Valuation::Infinite),
            t => t.parse::<i64>().map(Valuation::Finite).map_err(|_| NumError::BadValuation(s.to_string())),
        }
    }
}

/// Finite valuations serialize as integers, `Infinite` as the string `"inf"`.
impl serde::Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// The residue ring `Z/p^m` together with its prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicContext {
    p: Prime,
    m: u32,
    modulus: Integer,
}

impl PadicContext {
    pub fn new(p: u64, m: u32) -> Result<Self, NumError> {
        Self::with_prime(Prime::new(p)?, m)
    }

    pub fn with_prime(p: Prime, m: u32) -> Result<Self, NumError> {
        if m == 0 {
            return Err(NumError::ZeroExponent);
        }
        Ok(PadicContext { p, m, modulus: p.pow(m) })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// `p^m`.
    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }
}

/// Valuation of an integer; `None` for zero.
pub fn vp_integer(x: &Integer, p: Prime) -> Option<u64> {
    if *x == 0 {
        return None;
    }
    let mut t = Integer::from(x.abs_ref());
    Some(u64::from(t.remove_factor_mut(&p.to_integer())))
}

/// `v_p(x)`: the exponent of `p` in `x`, negative when `p` divides the
/// denominator.
pub fn vp(x: &Rational, p: Prime) -> Valuation {
    if *x.numer() == 0 {
        return Valuation::Infinite;
    }
    let num = vp_integer(x.numer(), p).unwrap_or(0) as i64;
    let den = vp_integer(x.denom(), p).unwrap_or(0) as i64;
    Valuation::Finite(num - den)
}

/// `x ≡ y (mod p^m)` in the valuation sense: `v_p(x - y) >= m`. Works for
/// rationals with `p` in their denominators.
pub fn congruent(x: &Rational, y: &Rational, ctx: &PadicContext) -> bool {
    let diff = Rational::from(x - y);
    vp(&diff, ctx.p).at_least(i64::from(ctx.m))
}

/// Canonical representative of a p-integral rational in `[0, p^m)`.
pub fn residue(x: &Rational, ctx: &PadicContext) -> Result<Integer, NumError> {
    if let Valuation::Finite(v) = vp(x, ctx.p) {
        if v < 0 {
            return Err(NumError::PNotIntegral(v));
        }
    }
    let inv = Integer::from(x.denom() % &ctx.modulus).invert(&ctx.modulus).expect("denominator is a unit modulo p^m");
    let mut r = Integer::from(x.numer() * &inv);
    r.modulo_mut(&ctx.modulus);
    Ok(r)
}

/// `numerator/denominator`, always with an explicit denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Inverse of [`format_rational`]; also accepts a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::from((n, d)))
        }
        None => s.parse::<Integer>().ok().map(Rational::from),
    }
}

/// Shorthand for building small rationals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn prime_construction() {
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(1).is_err());
        assert_eq!(Prime::new(47).unwrap().get(), 47);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert_eq!(
            primes_between(5, 47).iter().map(|q| q.get()).collect::<Vec<_>>(),
            vec![5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&rat(125, 1), p(5)), Valuation::Finite(3));
        assert_eq!(vp(&rat(-81, 8), p(3)), Valuation::Finite(4));
        assert_eq!(vp(&rat(0, 1), p(7)), Valuation::Infinite);
        assert_eq!(vp(&rat(7, 250), p(5)), Valuation::Finite(-3));
    }

    #[test]
    fn valuation_order_and_text() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert!(Valuation::Finite(-2) < Valuation::Finite(0));
        assert!(Valuation::Infinite.at_least(1_000));
        assert_eq!(Valuation::Infinite.to_string(), "inf");
        assert_eq!("inf".parse::<Valuation>().unwrap(), Valuation::Infinite);
        assert_eq!("-3".parse::<Valuation>().unwrap(), Valuation::Finite(-3));
        assert!("nan".parse::<Valuation>().is_err());
    }

    #[test]
    fn valuation_json() {
        assert_eq!(serde_json::to_string(&Valuation::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Valuation::Finite(-2)).unwrap(), "-2");
        for v in [Valuation::Infinite, Valuation::Finite(7)] {
            let back: Valuation = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn congruence_examples() {
        let ctx = PadicContext::new(5, 3).unwrap();
        assert!(congruent(&rat(126, 1), &rat(1, 1), &ctx));
        assert!(congruent(&rat(435, 512), &rat(5, 1), &ctx));
        assert!(!congruent(&rat(435, 512), &rat(6, 1), &ctx));
        let x = rat(-17, 3125);
        assert!(congruent(&x, &x, &ctx));
        // p in the denominator: 1/5 and 1/5 + 125 agree mod 5^3
        assert!(congruent(&rat(1, 5), &rat(626, 5), &ctx));
    }

    #[test]
    fn residue_examples() {
        let ctx = PadicContext::new(5, 2).unwrap();
        assert_eq!(residue(&rat(7, 6), &ctx).unwrap(), 22);
        assert_eq!(residue(&rat(0, 1), &PadicContext::new(7, 3).unwrap()).unwrap(), 0);
        assert_eq!(residue(&rat(1, 5), &ctx), Err(NumError::PNotIntegral(-1)));
        assert_eq!(residue(&rat(-1, 1), &ctx).unwrap(), 24);
    }

    #[test]
    fn context_rejects_bad_input() {
        assert_eq!(PadicContext::new(15, 2), Err(NumError::NotOddPrime(15)));
        assert_eq!(PadicContext::new(5, 0), Err(NumError::ZeroExponent));
        assert_eq!(*PadicContext::new(7, 3).unwrap().modulus(), 343);
    }

    #[test]
    fn rational_text_round_trip() {
        let x = rat(-2125, 512);
        assert_eq!(format_rational(&x), "-2125/512");
        assert_eq!(parse_rational("-2125/512").unwrap(), x);
        assert_eq!(format_rational(&rat(3, 1)), "3/1");
        assert_eq!(parse_rational("42").unwrap(), 42);
        assert!(parse_rational("1/0").is_none());
    }
}
