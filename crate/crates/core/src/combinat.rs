//! Factorials, binomials, rising factorials, harmonic numbers, Euler numbers
//! and Fermat quotients, all exact.
//!
//! Factorials, central binomials and Euler numbers are memoized in
//! process-wide tables guarded by `RwLock`s. Lookups are observationally
//! identical to recomputation.

use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};
use thiserror::Error;

use crate::exactnum::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("reciprocal of a vanishing rising factorial ({a})_{n}")]
    DivisionByZero { a: String, n: i64 },
    #[error("1/({a})_{n} with negative index is only defined for a = 1")]
    UnsupportedConvention { a: String, n: i64 },
    #[error("harmonic order must be positive")]
    ZeroOrder,
}

/// Largest argument kept in the factorial and central-binomial tables.
/// Larger arguments go straight to GMP.
const MEMO_LIMIT: u64 = 4096;

struct Memo {
    factorials: RwLock<Vec<Integer>>,
    central: RwLock<Vec<Integer>>,
    euler: RwLock<Vec<Integer>>,
}

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Memo {
        factorials: RwLock::new(vec![Integer::from(1)]),
        central: RwLock::new(vec![Integer::from(1)]),
        euler: RwLock::new(vec![Integer::from(1)]),
    })
}

/// Look up `table[n]`, extending the table with `step(table, i)` first if
/// needed.
fn memoized(table: &RwLock<Vec<Integer>>, n: usize, step: impl Fn(&[Integer], usize) -> Integer) -> Integer {
    if let Some(v) = table.read().expect("memo table poisoned").get(n) {
        return v.clone();
    }
    let mut t = table.write().expect("memo table poisoned");
    while t.len() <= n {
        let i = t.len();
        let next = step(&t, i);
        t.push(next);
    }
    t[n].clone()
}

fn to_u32(n: u64) -> u32 {
    u32::try_from(n).expect("argument too large for exact evaluation")
}

pub fn factorial(n: u64) -> Integer {
    if n > MEMO_LIMIT {
        return Integer::factorial(to_u32(n)).complete();
    }
    memoized(&memo().factorials, n as usize, |t, i| Integer::from(&t[i - 1] * i as u64))
}

/// `binomial(2k, k)`.
pub fn central_binomial(k: u64) -> Integer {
    if k > MEMO_LIMIT {
        return Integer::binomial_u(to_u32(2 * k), to_u32(k)).complete();
    }
    // C(2i, i) = C(2i-2, i-1) * 2(2i-1) / i
    memoized(&memo().central, k as usize, |t, i| {
        let i = i as u64;
        Integer::from(&t[i as usize - 1] * (2 * (2 * i - 1))) / i
    })
}

/// `binomial(n, k)` for any signed `n`. For `n < 0` this is
/// `(-1)^k binomial(-n+k-1, k)`.
pub fn binomial(n: i64, k: u64) -> Integer {
    if n < 0 {
        let b = binomial(-n + k as i64 - 1, k);
        return if k % 2 == 1 { -b } else { b };
    }
    let n = n as u64;
    if k > n {
        return Integer::new();
    }
    if n == 2 * k {
        return central_binomial(k);
    }
    Integer::binomial_u(to_u32(n), to_u32(k.min(n - k))).complete()
}

/// `a (a-1) ... (a-k+1) / k!` for rational `a`.
pub fn binomial_rat(a: &Rational, k: u64) -> Rational {
    if *a.denom() == 1 {
        if let Some(n) = a.numer().to_i64() {
            return Rational::from(binomial(n, k));
        }
    }
    // falling factorial = (-1)^k (-a)_k
    let mut falling = pochhammer(&Rational::from(-a), k);
    if k % 2 == 1 {
        falling = -falling;
    }
    falling / factorial(k)
}

/// Product of the odd numbers `1, 3, ..., n`; `(-1)!! = 1`.
fn odd_double_factorial(n: i64) -> Integer {
    debug_assert!(n >= -1 && n % 2 != 0);
    if n <= 1 {
        Integer::from(1)
    } else {
        Integer::factorial_2(to_u32(n as u64)).complete()
    }
}

/// Product of the odd integers `lo, lo+2, ..., hi` (both odd, `lo <= hi`).
fn odd_range_product(lo: i64, hi: i64) -> Integer {
    debug_assert!(lo <= hi);
    if lo > 0 {
        odd_double_factorial(hi) / odd_double_factorial(lo - 2)
    } else if hi < 0 {
        let count = (hi - lo) / 2 + 1;
        let mag = odd_double_factorial(-lo) / odd_double_factorial(-hi - 2);
        if count % 2 == 1 {
            -mag
        } else {
            mag
        }
    } else {
        odd_range_product(lo, -1) * odd_double_factorial(hi)
    }
}

/// Product of the integers `lo, lo+1, ..., hi` (`lo <= hi`).
fn int_range_product(lo: i64, hi: i64) -> Integer {
    debug_assert!(lo <= hi);
    if lo <= 0 && hi >= 0 {
        Integer::new()
    } else if lo > 0 {
        if hi - lo < 16 {
            (lo..=hi).fold(Integer::from(1), |acc, j| acc * j)
        } else {
            factorial(hi as u64) / factorial(lo as u64 - 1)
        }
    } else {
        let mag = int_range_product(-hi, -lo);
        if (hi - lo + 1) % 2 == 1 {
            -mag
        } else {
            mag
        }
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let last = n as i64 - 1;
    if let Some(num) = a.numer().to_i64() {
        if *a.denom() == 1 {
            return Rational::from(int_range_product(num, num + last));
        }
        if *a.denom() == 2 {
            let prod = odd_range_product(num, num + 2 * last);
            return Rational::from((prod, Integer::from(1) << to_u32(n)));
        }
    }
    let mut acc = Rational::from(1);
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += 1;
    }
    acc
}

/// `1 / (a)_n`. For negative `n` only `a = 1` is supported, where the value
/// is 0 by convention.
pub fn recip_pochhammer(a: &Rational, n: i64) -> Result<Rational, CombinatError> {
    if n < 0 {
        return if *a == 1 {
            Ok(Rational::new())
        } else {
            Err(CombinatError::UnsupportedConvention { a: a.to_string(), n })
        };
    }
    let v = pochhammer(a, n as u64);
    if v == 0 {
        return Err(CombinatError::DivisionByZero { a: a.to_string(), n });
    }
    Ok(v.recip())
}

/// Order of a generalized harmonic number `H_n^{(order)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicOrder(u32);

impl HarmonicOrder {
    pub const FIRST: HarmonicOrder = HarmonicOrder(1);
    pub const SECOND: HarmonicOrder = HarmonicOrder(2);

    pub fn new(order: u32) -> Result<Self, CombinatError> {
        if order == 0 {
            Err(CombinatError::ZeroOrder)
        } else {
            Ok(HarmonicOrder(order))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `sum_{k=1}^{n} 1/k^order`.
pub fn harmonic(n: u64, order: HarmonicOrder) -> Rational {
    let mut acc = Rational::new();
    for k in 1..=n {
        acc += Rational::from((Integer::from(1), Integer::from(k).pow(order.0)));
    }
    acc
}

/// Euler number from `E_0 = 1`, `E_n = -sum_{k=1}^{floor(n/2)} C(n,2k) E_{n-2k}`.
pub fn euler_number(n: u64) -> Integer {
    memoized(&memo().euler, n as usize, |t, i| {
        let mut acc = Integer::new();
        for k in 1..=i / 2 {
            acc += binomial(i as i64, 2 * k as u64) * &t[i - 2 * k];
        }
        -acc
    })
}

/// Fermat quotient `q_p(2) = (2^{p-1} - 1) / p`.
pub fn fermat_quotient(p: Prime) -> Integer {
    let pow = Integer::from(1) << to_u32(p.get() - 1);
    (pow - 1u32) / p.get()
}

/// `binomial(n, k) mod p` as the product of binomials of base-p digits.
pub fn lucas_residue(n: u64, k: u64, p: Prime) -> u64 {
    let p = p.get();
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (dn, dk) = (n % p, k % p);
        if dk > dn {
            return 0;
        }
        acc = mul_mod(acc, small_binomial_mod(dn, dk, p), p);
        n /= p;
        k /= p;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `binomial(n, k) mod p` for `k <= n < p` via Fermat inversion.
fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    let mut inv = 1u64;
    let (mut b, mut e) = (den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = mul_mod(inv, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    mul_mod(num, inv, p)
}
