use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{sign, Body, Claim, CongruenceCase, Inst, Status};
use crate::combinat::{binomial, binomial_rat, euler_number, harmonic, HarmonicOrder};
use crate::term::{Affine, Factor, Term, TermError};
use crate::wz::{pair, PairId};

const N: Affine = Affine::new(0, 1, 0);

/// `C(n, k)` with `C(n, k) = 0` for `k < 0`.
fn c(n: i64, k: i64) -> Rational {
    if k < 0 {
        Rational::new()
    } else {
        Rational::from(binomial(n, k as u64))
    }
}

fn int(x: i64) -> Rational {
    Rational::from(x)
}

fn four_pow(e: i64) -> Rational {
    let x = Rational::from(Integer::from(4).pow(e.unsigned_abs() as u32));
    if e < 0 {
        x.recip()
    } else {
        x
    }
}

fn f_at(id: PairId, n: i64, k: i64) -> Result<Rational, TermError> {
    pair(id).f.eval(n, k)
}

fn g_at(id: PairId, n: i64, k: i64) -> Result<Rational, TermError> {
    pair(id).g.eval(n, k)
}

fn g_sum(id: PairId, n: i64, ks: std::ops::RangeInclusive<i64>) -> Result<Rational, TermError> {
    let mut acc = Rational::new();
    for k in ks {
        acc += g_at(id, n, k)?;
    }
    Ok(acc)
}

/// `E_{p-3}`.
fn euler_p3(i: &Inst) -> Rational {
    Rational::from(euler_number(i.p.get() - 3))
}

/// Prefactor and summand of the θ sums for the `(4k-1)` pair.
fn theta_prefactor(i: &Inst) -> Rational {
    let pr = i.pr;
    let num = i.p_r().pow(3u32) * c(2 * pr - 1, pr - 1).pow(2u32);
    -num / int(2 * pr - 1) * four_pow(-(3 * pr - 3))
}

fn theta_term(i: &Inst, k: i64) -> Rational {
    let pr = i.pr;
    let mut t = Rational::from(Integer::from(-4).pow(k as u32)) / c(2 * k, k);
    t *= c(-2 * pr - 1, 2 * k - 2) / int(k * (2 * k - 1));
    t * c(2 * pr - 2, pr - k - 1)
}

macro_rules! theta_where {
    () => {
        r", \Theta=-\frac{p^{3r}\binom{2p^r-1}{p^r-1}^2}{(2p^r-1)4^{3p^r-3}}, \vartheta(k)=\frac{(-4)^k}{\binom{2k}k}\frac{\binom{-2p^r-1}{2k-2}}{k(2k-1)}\binom{2p^r-2}{p^r-k-1}"
    };
}

fn theta_sum(i: &Inst, ks: std::ops::RangeInclusive<i64>) -> Rational {
    let mut acc = Rational::new();
    for k in ks {
        acc += theta_term(i, k);
    }
    theta_prefactor(i) * acc
}

fn rising(num: i64, den: i64, len: Affine) -> Factor {
    Factor::Rising { num: Affine::constant(num), den, len }
}

fn vh_summand() -> Term {
    Term::new(vec![
        (Factor::Sign(N), 1),
        (Factor::linear(Affine::new(1, 4, 0)), 1),
        (rising(1, 2, N), 3),
        (rising(1, 1, N), -3),
    ])
}

fn z120_summand() -> Term {
    Term::new(vec![
        (rising(1, 2, N), 3),
        (rising(1, 2, Affine::new(0, 2, 0)), 1),
        (rising(1, 1, N), -5),
        (Factor::poly(&[(120, 2, 0), (34, 1, 0), (3, 0, 0)]), 1),
        (Factor::Power { base: 2, exp: Affine::new(0, 6, 0) }, -1),
    ])
}

fn mao_summand() -> Term {
    Term::new(vec![(rising(1, 2, N), 2), (Factor::linear(Affine::new(1, 1, 0)), -1), (rising(1, 1, N), -2)])
}

fn suncat_summand() -> Term {
    Term::new(vec![
        (Factor::Binomial { top: Affine::new(0, 2, 0), bottom: N }, 1),
        (Factor::linear(Affine::new(1, 2, 0)), -1),
        (Factor::Power { base: 4, exp: N }, -1),
    ])
}

fn alternating(mut t: Term) -> Term {
    t.factors.insert(0, (Factor::Sign(N), 1));
    t
}

fn case(id: &'static str, status: Status, anchor: &'static str, claim: Claim, body: Body) -> CongruenceCase {
    CongruenceCase {
        id,
        status,
        anchor,
        takes_r: false,
        takes_delta: false,
        p_floor: 5,
        r_floor: 1,
        claim,
        body,
        pair: None,
    }
}

fn with_r(mut c: CongruenceCase) -> CongruenceCase {
    c.takes_r = true;
    c
}

fn with_delta(mut c: CongruenceCase) -> CongruenceCase {
    c.takes_delta = true;
    c
}

/// The lemmas behind the GUO64, GL4K1 and Z20N3 results are established for `r > 1` only.
fn r_from_two(mut c: CongruenceCase) -> CongruenceCase {
    c.takes_r = true;
    c.r_floor = 2;
    c
}

fn linked(mut c: CongruenceCase, id: PairId) -> CongruenceCase {
    debug_assert!(c.pair.is_none());
    c.pair = Some(id);
    c
}

fn series(summand: Term, upper: fn(&Inst) -> i64, rhs: fn(&Inst) -> Rational) -> Body {
    Body::Series { summand, upper, rhs, p_integral: true }
}

fn exp(f: fn(&Inst) -> i64) -> Claim {
    Claim::Exponent(f)
}

fn zero(_: &Inst) -> Rational {
    Rational::new()
}

/// Upper limit `(p^r - 1)/delta`.
fn upper_delta(i: &Inst) -> i64 {
    (i.pr - 1) / i64::from(i.delta)
}

fn upper_full(i: &Inst) -> i64 {
    i.pr - 1
}

/// `p^{2r}` for `r <= 4`, otherwise 0.
fn gz_rhs(i: &Inst) -> Rational {
    if i.r <= 4 {
        i.p_pow(2 * i.r)
    } else {
        Rational::new()
    }
}

/// Indices `(p^r+1)/2 ..= p^r - 1`, i.e. `k + l = p^r` with `0 < l < p^r/2`.
fn upper_half_k(i: &Inst) -> (i64, i64) {
    ((i.pr + 1) / 2, i.pr - 1)
}

fn build() -> Vec<CongruenceCase> {
    use Status::*;
    let gz = pair(PairId::Gz10n2).summand.clone();
    let guo = pair(PairId::Guo64).summand.clone();
    let gl = pair(PairId::Gl4k1).summand.clone();
    let z20 = pair(PairId::Z20n3).summand.clone();
    let mut cases = vec![
        // introduction
        case(
            "VH-4K1",
            Known,
            r"\sum_{k=0}^{(p-1)/2}(4k+1)(-1)^k((1/2)_k/k!)^3 \equiv (-1)^{(p-1)/2}p \pmod{p^3}",
            exp(|_| 3),
            series(vh_summand(), |i| (i.pu() - 1) / 2, |i| int(sign((i.pu() - 1) / 2) * i.pu())),
        ),
        case(
            "WOLST-H1",
            Known,
            r"H_{p-1} \equiv 0 \pmod{p^2}",
            exp(|_| 2),
            Body::Quantity { lhs: |i| Ok(harmonic(i.p.get() - 1, HarmonicOrder::FIRST)), rhs: zero },
        ),
        case(
            "WOLST-H2",
            Known,
            r"H^{(2)}_{p-1} \equiv 0 \pmod{p}",
            exp(|_| 1),
            Body::Quantity { lhs: |i| Ok(harmonic(i.p.get() - 1, HarmonicOrder::SECOND)), rhs: zero },
        ),
        case(
            "WOLST-BIN",
            Known,
            r"\binom{2p-1}{p-1} \equiv 1 \pmod{p^3}",
            exp(|_| 3),
            Body::Quantity { lhs: |i| Ok(c(2 * i.pu() - 1, i.pu() - 1)), rhs: |_| int(1) },
        ),
        linked(
            with_r(with_delta(case(
                "GZ-10N2",
                Theorem,
                r"\sum_{n=0}^{(p^r-1)/\delta}\frac{(1/2)_n^5}{n!^5}(10n^2+6n+1)(-4)^n \equiv p^{2r} (r\le4),\ 0 (r\ge5) \pmod{p^{r+4}}",
                exp(|i| i64::from(i.r) + 4),
                series(gz.clone(), upper_delta, gz_rhs),
            ))),
            PairId::Gz10n2,
        ),
        linked(
            with_r(with_delta(case(
                "CONJ-10N2",
                Conjecture,
                r"\sum_{n=0}^{(p^r-1)/\delta}\frac{(1/2)_n^5}{n!^5}(10n^2+6n+1)(-4)^n \equiv p^{2r} \pmod{p^{2r+3}}",
                exp(|i| 2 * i64::from(i.r) + 3),
                series(gz, upper_delta, |i| i.p_pow(2 * i.r)),
            ))),
            PairId::Gz10n2,
        ),
        linked(
            with_r(case(
                "Z-20N3",
                Theorem,
                r"\sum_{n=0}^{p^r-1}(-1)^n\frac{(1/2)_n(1/2)_{2n}}{n!^3}\frac{20n+3}{2^{4n}} \equiv 3(-1)^{(p^r-1)/2}p^r \pmod{p^{r+2}}",
                exp(|i| i64::from(i.r) + 2),
                series(alternating(z20.clone()), upper_full, |i| int(3 * sign(i.half()) * i.pr)),
            )),
            PairId::Z20n3,
        ),
        with_r(case(
            "Z-20N3-RAW",
            Informational,
            r"\sum_{n=0}^{p^r-1}\frac{(1/2)_n(1/2)_{2n}}{n!^3}\frac{20n+3}{2^{4n}} \equiv 3(-1)^{(p^r-1)/2}p^r \pmod{p^{r+2}} (unsigned)",
            exp(|i| i64::from(i.r) + 2),
            series(z20, upper_full, |i| int(3 * sign(i.half()) * i.pr)),
        )),
        case(
            "Z-120N2",
            Known,
            r"\sum_{n=0}^{p-1}\frac{(1/2)_n^3(1/2)_{2n}}{n!^5}\frac{120n^2+34n+3}{2^{6n}} \equiv 3p^2 \pmod{p^5}",
            exp(|_| 5),
            series(z120_summand(), |i| i.pu() - 1, |i| int(3 * i.pu() * i.pu())),
        ),
        with_r(with_delta(case(
            "GZ-120N2-R",
            Theorem,
            r"\sum_{n=0}^{(p^r-1)/\delta}\frac{(1/2)_n^3(1/2)_{2n}}{n!^5}\frac{120n^2+34n+3}{2^{6n}} \equiv 3p^{2r} (r\le4),\ 0 (r\ge5) \pmod{p^{r+4}}",
            exp(|i| i64::from(i.r) + 4),
            series(z120_summand(), upper_delta, |i| int(3) * gz_rhs(i)),
        ))),
        with_r(with_delta(case(
            "GZ-120N2-R-RAW",
            Informational,
            r"\sum_{n=0}^{(p^r-1)/\delta}\frac{(1/2)_n^3(1/2)_{2n}}{n!^5}\frac{120n^2+34n+3}{2^{6n}} \equiv p^{2r} (r\le4),\ 0 (r\ge5) \pmod{p^{r+4}}",
            exp(|i| i64::from(i.r) + 4),
            series(z120_summand(), upper_delta, gz_rhs),
        ))),
        linked(
            with_r(case(
                "GUO-64",
                Theorem,
                r"\sum_{k=0}^{p^r-1}\frac{4k+1}{(-64)^k}\binom{2k}k^3 \equiv (-1)^{(p-1)r/2}p^r \pmod{p^{r+2}}",
                exp(|i| i64::from(i.r) + 2),
                series(guo.clone(), upper_full, |i| int(sign((i.pu() - 1) / 2 * i64::from(i.r)) * i.pr)),
            )),
            PairId::Guo64,
        ),
        case(
            "SUN-64-P4",
            Known,
            r"\sum_{k=0}^{p-1}\frac{4k+1}{(-64)^k}\binom{2k}k^3 \equiv (-1)^{(p-1)/2}p+p^3E_{p-3} \pmod{p^4}",
            exp(|_| 4),
            series(guo, |i| i.pu() - 1, |i| int(sign((i.pu() - 1) / 2) * i.pu()) + i.p_pow(3) * euler_p3(i)),
        ),
        case(
            "GL-4K1-P4",
            Known,
            r"\sum_{k=0}^{(p+1)/2}(-1)^k(4k-1)\frac{(-1/2)_k^3}{(1)_k^3} \equiv p(-1)^{(p+1)/2}+p^3(2-E_{p-3}) \pmod{p^4}",
            exp(|_| 4),
            series(
                gl.clone(),
                |i| (i.pu() + 1) / 2,
                |i| int(sign((i.pu() + 1) / 2) * i.pu()) + i.p_pow(3) * (int(2) - euler_p3(i)),
            ),
        ),
        linked(
            with_r(case(
                "GL-R",
                Theorem,
                r"\sum_{k=0}^{p^r-1}(-1)^k(4k-1)\frac{(-1/2)_k^3}{(1)_k^3} \equiv -(-1)^{(p-1)r/2}p^r \pmod{p^{r+2}}",
                exp(|i| i64::from(i.r) + 2),
                series(gl, upper_full, |i| int(-sign((i.pu() - 1) / 2 * i64::from(i.r)) * i.pr)),
            )),
            PairId::Gl4k1,
        ),
        case(
            "MAO-I2",
            Theorem,
            r"\sum_{n=0}^{(p-1)/2}\frac{(1/2)_n^2}{(n+1)n!^2} \equiv 2p^2+2p^3(2q_p(2)-1) \pmod{p^4}",
            exp(|_| 4),
            series(
                mao_summand(),
                |i| (i.pu() - 1) / 2,
                |i| i.p_pow(2) * int(2) + i.p_pow(3) * int(2) * (i.q() * int(2) - int(1)),
            ),
        ),
        case(
            "MAO-I2-IDENT",
            Known,
            r"\sum_{n=0}^{(p-1)/2}\frac{(1/2)_n^2}{(n+1)n!^2} = \binom{-3/2}{(p-1)/2}^2/((p-1)/2+1)",
            Claim::Equality,
            series(
                mao_summand(),
                |i| (i.pu() - 1) / 2,
                |i| {
                    let h = (i.pu() - 1) / 2;
                    binomial_rat(&Rational::from((-3, 2)), h as u64).pow(2u32) / int(h + 1)
                },
            ),
        ),
        case(
            "SUN-CAT",
            Known,
            r"\sum_{k=0}^{(p-3)/2}\frac{\binom{2k}k}{(2k+1)4^k} \equiv -(-1)^{(p-1)/2}q_p(2) \pmod{p^2}",
            exp(|_| 2),
            series(suncat_summand(), |i| (i.pu() - 3) / 2, |i| -int(sign((i.pu() - 1) / 2)) * i.q()),
        ),
        case(
            "H-HALF",
            Known,
            r"H_{(p-1)/2} \equiv -2q_p(2) \pmod{p}",
            exp(|_| 1),
            Body::Quantity {
                lhs: |i| Ok(harmonic((i.p.get() - 1) / 2, HarmonicOrder::FIRST)),
                rhs: |i| -int(2) * i.q(),
            },
        ),
        // facts about central binomials, k + l = p^r
        with_r(case(
            "FACT-2LL",
            FactFamily,
            r"l\binom{2l}l\binom{2k}k \equiv -2p^r \pmod{p^{r+1}},\ k+l=p^r,\ 0<l<p^r/2",
            exp(|i| i64::from(i.r) + 1),
            Body::Family {
                indices: upper_half_k,
                lhs: |i, k| {
                    let l = i.pr - k;
                    int(l) * c(2 * l, l) * c(2 * k, k)
                },
                rhs: |i, _| int(-2 * i.pr),
            },
        )),
        with_r(case(
            "FACT-2KK",
            FactFamily,
            r"\binom{2k}k \equiv 0 \pmod{p},\ (p^r+1)/2 \le k \le p^r-1",
            exp(|_| 1),
            Body::Family { indices: upper_half_k, lhs: |_, k| c(2 * k, k), rhs: |_, _| Rational::new() },
        )),
        with_r(case(
            "FACT-INV",
            FactFamily,
            r"\frac{-2p^r}{l\binom{2l}l} \equiv \binom{2k}k \pmod{p^2},\ k+l=p^r,\ 0<l<p^r/2",
            exp(|_| 2),
            Body::Family {
                indices: upper_half_k,
                lhs: |i, k| {
                    let l = i.pr - k;
                    int(-2 * i.pr) / (int(l) * c(2 * l, l))
                },
                rhs: |_, k| c(2 * k, k),
            },
        )),
        with_r(case(
            "DAO-HB",
            FactFamily,
            r"\frac{-2p^r}{\binom{2k}k} \equiv (p^r-k)\binom{2p^r-2k}{p^r-k} \pmod{p},\ (p^r+3)/2 \le k \le p^r-1",
            exp(|_| 1),
            Body::Family {
                indices: |i| ((i.pr + 3) / 2, i.pr - 1),
                lhs: |i, k| int(-2 * i.pr) / c(2 * k, k),
                rhs: |i, k| int(i.pr - k) * c(2 * i.pr - 2 * k, i.pr - k),
            },
        )),
        // lemmas for the (10n^2+12nk+...) pair
        with_r(with_delta(case(
            "LEM-2.1",
            Lemma,
            r"\sum_{n=0}^{(p^r-1)/\delta}F(n,(p^r-1)/2) \equiv p^{2r} \pmod{p^{2r+3}}",
            exp(|i| 2 * i64::from(i.r) + 3),
            Body::Quantity {
                lhs: |i| {
                    let mut acc = Rational::new();
                    for n in 0..=upper_delta(i) {
                        acc += f_at(PairId::Gz10n2, n, i.half())?;
                    }
                    Ok(acc)
                },
                rhs: |i| i.p_pow(2 * i.r),
            },
        ))),
        with_r(case(
            "LEM-2.2",
            Lemma,
            r"\sum_{k=1}^{(p^r-1)/2}G((p^r+1)/2,k) \equiv 0 \pmod{p^{r+4}}",
            exp(|i| i64::from(i.r) + 4),
            Body::Quantity { lhs: |i| g_sum(PairId::Gz10n2, (i.pr + 1) / 2, 1..=i.half()), rhs: zero },
        )),
        with_r(case(
            "LEM-2.3",
            Lemma,
            r"\sum_{k=1}^{(p^r-1)/2}G(p^r,k) \equiv 0 \pmod{p^{r+4}}",
            exp(|i| i64::from(i.r) + 4),
            Body::Quantity { lhs: |i| g_sum(PairId::Gz10n2, i.pr, 1..=i.half()), rhs: zero },
        )),
        // lemmas for the (4n+1)/(-64)^n pair
        r_from_two(case(
            "LEM-3.1",
            Lemma,
            r"F(p^r-1,p^r-1) \equiv 0 \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| f_at(PairId::Guo64, i.pr - 1, i.pr - 1), rhs: zero },
        )),
        r_from_two(case(
            "LEM-3.2",
            Lemma,
            r"\sum_{k=1}^{(p^r-1)/2}G(p^r,k) \equiv 0 \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| g_sum(PairId::Guo64, i.pr, 1..=i.half()), rhs: zero },
        )),
        r_from_two(case(
            "LEM-3.3",
            Lemma,
            r"G(p^r,(p^r+1)/2) \equiv (-1)^{(p^r-1)/2}p^r(1-3pq_p(2)) \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| g_at(PairId::Guo64, i.pr, (i.pr + 1) / 2),
                rhs: |i| int(sign(i.half()) * i.pr) * (int(1) - int(3 * i.pu()) * i.q()),
            },
        )),
        r_from_two(case(
            "LEM-3.5",
            Lemma,
            r"\sum_{k=(p^r+3)/2}^{p^r-1}G(p^r,k) \equiv (-1)^{(p^r-1)/2}3p^{r+1}q_p(2) \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| g_sum(PairId::Guo64, i.pr, (i.pr + 3) / 2..=i.pr - 1),
                rhs: |i| int(3 * sign(i.half())) * i.p_pow(i.r + 1) * i.q(),
            },
        )),
        with_r(case(
            "BIN-3.4",
            Lemma,
            r"\binom{p^r-1}{(p^r-1)/2} \equiv (-1)^{(p^r-1)/2}4^{p^r-1} \pmod{p^3}",
            exp(|_| 3),
            Body::Quantity { lhs: |i| Ok(c(i.pr - 1, i.half())), rhs: |i| int(sign(i.half())) * four_pow(i.pr - 1) },
        )),
        with_r(case(
            "BIN-3.5",
            Lemma,
            r"\binom{3p^r-1}{p^r} \equiv 2(1-3p^rH_{p^r-1}) \pmod{p^2}",
            exp(|_| 2),
            Body::Quantity {
                lhs: |i| Ok(c(3 * i.pr - 1, i.pr)),
                rhs: |i| int(2) * (int(1) - i.p_r() * int(3) * harmonic(i.pr as u64 - 1, HarmonicOrder::FIRST)),
            },
        )),
        with_r(case(
            "BIN-3.6",
            Lemma,
            r"\binom{2p^r-1}{p^r-1} \equiv 1 \pmod{p^2}",
            exp(|_| 2),
            Body::Quantity { lhs: |i| Ok(c(2 * i.pr - 1, i.pr - 1)), rhs: |_| int(1) },
        )),
        with_r(case(
            "BIN-3.7",
            Lemma,
            r"\binom{2p^r-1}{(p^r-1)/2} \equiv (-1)^{(p^r-1)/2}(1-2pH_{(p-1)/2}) \pmod{p^2}",
            exp(|_| 2),
            Body::Quantity {
                lhs: |i| Ok(c(2 * i.pr - 1, i.half())),
                rhs: |i| {
                    let h = harmonic((i.p.get() - 1) / 2, HarmonicOrder::FIRST);
                    int(sign(i.half())) * (int(1) - int(2 * i.pu()) * h)
                },
            },
        )),
        with_r(case(
            "BIN-3.9",
            FactFamily,
            r"\binom{2p^r-1}{k} \equiv (-1)^k \pmod p,\ 1 \le k \le (p^r-3)/2",
            exp(|_| 1),
            Body::Family { indices: |i| (1, (i.pr - 3) / 2), lhs: |i, k| c(2 * i.pr - 1, k), rhs: |_, k| int(sign(k)) },
        )),
        with_r(case(
            "BIN-3.10",
            FactFamily,
            r"\binom{-2p^r-1}{2p^r-2k-2} \equiv 3 \pmod p,\ 1 \le k \le (p^r-3)/2",
            exp(|_| 1),
            Body::Family {
                indices: |i| (1, (i.pr - 3) / 2),
                lhs: |i, k| c(-2 * i.pr - 1, 2 * i.pr - 2 * k - 2),
                rhs: |_, _| int(3),
            },
        )),
        with_r(case(
            "BIN-3.11",
            FactFamily,
            r"\binom{2jp^{r-1}-p^{r-1}-1}{jp^{r-1}-(p^{r-1}+1)/2} \equiv (-1)^{(p^{r-1}-1)/2}\binom{2j-2}{j-1} \pmod p,\ 1 \le j \le (p-1)/2",
            exp(|_| 1),
            Body::Family {
                indices: |i| (1, (i.pu() - 1) / 2),
                lhs: |i, j| {
                    let s = i.pr / i.pu();
                    c(2 * j * s - s - 1, j * s - (s + 1) / 2)
                },
                rhs: |i, j| {
                    let s = i.pr / i.pu();
                    int(sign((s - 1) / 2)) * c(2 * j - 2, j - 1)
                },
            },
        )),
        // lemmas for the (4k-1) pair
        r_from_two(case(
            "LEM-4.1",
            Lemma,
            r"F(p^r-1,p^r-1) \equiv 0 \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| f_at(PairId::Gl4k1, i.pr - 1, i.pr - 1), rhs: zero },
        )),
        r_from_two(case(
            "LEM-4.2",
            Lemma,
            concat!(r"\theta_1 = \Theta\sum_{k=1}^{(p^r-1)/2}\vartheta(k) \equiv 0 \pmod{p^{r+2}}", theta_where!()),
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| Ok(theta_sum(i, 1..=i.half())), rhs: zero },
        )),
        r_from_two(case(
            "LEM-4.3",
            Lemma,
            concat!(
                r"\theta_2 = \Theta\,\vartheta((p^r+1)/2) \equiv -(-1)^{(p^r-1)/2}p^r(1-3pq_p(2)) \pmod{p^{r+2}}",
                theta_where!()
            ),
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| Ok(theta_sum(i, (i.pr + 1) / 2..=(i.pr + 1) / 2)),
                rhs: |i| int(-sign(i.half()) * i.pr) * (int(1) - int(3 * i.pu()) * i.q()),
            },
        )),
        r_from_two(case(
            "LEM-4.4",
            Lemma,
            concat!(
                r"\theta_3 = \Theta\sum_{k=(p^r+3)/2}^{p^r-1}\vartheta(k) \equiv -(-1)^{(p^r-1)/2}3p^{r+1}q_p(2) \pmod{p^{r+2}}",
                theta_where!()
            ),
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| Ok(theta_sum(i, (i.pr + 3) / 2..=i.pr - 1)),
                rhs: |i| int(-3 * sign(i.half())) * i.p_pow(i.r + 1) * i.q(),
            },
        )),
        // lemmas for the (20n-2k+3) pair
        r_from_two(case(
            "LEM-5.1",
            Lemma,
            r"F(p^r-1,p^r-1) \equiv 0 \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| f_at(PairId::Z20n3, i.pr - 1, i.pr - 1), rhs: zero },
        )),
        r_from_two(case(
            "LEM-5.2",
            Lemma,
            r"\sum_{k=1}^{(p^r-1)/2}G(p^r,k) \equiv 0 \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity { lhs: |i| g_sum(PairId::Z20n3, i.pr, 1..=i.half()), rhs: zero },
        )),
        r_from_two(case(
            "LEM-5.3",
            Lemma,
            r"G(p^r,(p^r+1)/2) \equiv (-1)^{(p^r-1)/2}3p^r(1-5pq_p(2)) \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| g_at(PairId::Z20n3, i.pr, (i.pr + 1) / 2),
                rhs: |i| int(3 * sign(i.half()) * i.pr) * (int(1) - int(5 * i.pu()) * i.q()),
            },
        )),
        r_from_two(case(
            "LEM-5.4",
            Lemma,
            r"\sum_{k=(p^r+3)/2}^{p^r-1}G(p^r,k) \equiv (-1)^{(p^r-1)/2}15p^{r+1}q_p(2) \pmod{p^{r+2}}",
            exp(|i| i64::from(i.r) + 2),
            Body::Quantity {
                lhs: |i| g_sum(PairId::Z20n3, i.pr, (i.pr + 3) / 2..=i.pr - 1),
                rhs: |i| int(15 * sign(i.half())) * i.p_pow(i.r + 1) * i.q(),
            },
        )),
        with_r(case(
            "LEM-5.F1",
            FactFamily,
            r"\binom{3p^r-1}{k} \equiv (-1)^k \pmod p,\ 1 \le k \le (p^r-3)/2",
            exp(|_| 1),
            Body::Family { indices: |i| (1, (i.pr - 3) / 2), lhs: |i, k| c(3 * i.pr - 1, k), rhs: |_, k| int(sign(k)) },
        )),
        with_r(case(
            "LEM-5.F2",
            FactFamily,
            r"\binom{-4p^r-1}{2p^r-2k-2} \equiv 5 \pmod p,\ 1 \le k \le (p^r-3)/2",
            exp(|_| 1),
            Body::Family {
                indices: |i| (1, (i.pr - 3) / 2),
                lhs: |i, k| c(-4 * i.pr - 1, 2 * i.pr - 2 * k - 2),
                rhs: |_, _| int(5),
            },
        )),
    ];
    for c in &mut cases {
        let from_pair = match c.id.get(..6) {
            _ if c.id.starts_with("LEM-5.F") => None,
            Some("LEM-2.") => Some(PairId::Gz10n2),
            Some("LEM-3.") => Some(PairId::Guo64),
            Some("LEM-4.") => Some(PairId::Gl4k1),
            Some("LEM-5.") => Some(PairId::Z20n3),
            _ => None,
        };
        c.pair = c.pair.or(from_pair);
    }
    cases
}

/// Every registered case, built once.
pub fn catalog() -> &'static [CongruenceCase] {
    static CATALOG: OnceLock<Vec<CongruenceCase>> = OnceLock::new();
    CATALOG.get_or_init(build)
}
