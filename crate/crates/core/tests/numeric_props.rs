use proptest::prelude::*;
use rug::{Integer, Rational};

use supercong::combinat::{binomial, binomial_rat, lucas_residue, pochhammer};
use supercong::exactnum::{congruent, residue, vp, PadicContext, Prime, ResidueRing, Valuation};

const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn prime() -> impl Strategy<Value = Prime> {
    proptest::sample::select(&PRIMES[..]).prop_map(|p| Prime::new(p).unwrap())
}

/// Nonzero rationals whose numerator and denominator carry a random power of
/// small primes, so valuations are interesting.
fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..2000, 0u32..4, 0u32..4, prime()).prop_filter_map("nonzero", |(n, d, a, b, p)| {
        if n == 0 {
            return None;
        }
        let num = Integer::from(n) * p.pow(a);
        let den = Integer::from(d) * p.pow(b);
        Some(Rational::from((num, den)))
    })
}

fn schoolbook_mod(n: i128, modulus: i128) -> i128 {
    ((n % modulus) + modulus) % modulus
}

proptest! {
    #[test]
    fn vp_is_multiplicative(x in rational(), y in rational(), p in prime()) {
        let (vx, vy) = (vp(&x, p).finite().unwrap(), vp(&y, p).finite().unwrap());
        prop_assert_eq!(vp(&Rational::from(&x * &y), p), Valuation::Finite(vx + vy));
    }

    #[test]
    fn vp_is_ultrametric(x in rational(), y in rational(), p in prime()) {
        let (vx, vy) = (vp(&x, p), vp(&y, p));
        let vs = vp(&Rational::from(&x + &y), p);
        prop_assert!(vs >= vx.min(vy));
        if vx != vy {
            prop_assert_eq!(vs, vx.min(vy));
        }
    }

    #[test]
    fn congruence_is_transitive(x in rational(), d1 in -50i64..50, d2 in -50i64..50, p in prime(), m in 1u32..5) {
        let ctx = PadicContext::with_prime(p, m).unwrap();
        let step = Rational::from(p.pow(m));
        let y = &x + Rational::from(d1) * &step;
        let z = &y + Rational::from(d2) * &step;
        prop_assert!(congruent(&x, &y, &ctx) && congruent(&y, &z, &ctx));
        prop_assert!(congruent(&x, &z, &ctx));
        prop_assert!(congruent(&x, &x, &ctx));
    }

    #[test]
    fn residue_equality_matches_congruence(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, p in prime(), m in 1u32..6) {
        let ctx = PadicContext::with_prime(p, m).unwrap();
        let pu = p.get() as i64;
        let x = Rational::from((a, if b % pu == 0 { b + 1 } else { b }));
        let y = Rational::from(c);
        prop_assert_eq!(congruent(&x, &y, &ctx), residue(&x, &ctx).unwrap() == residue(&y, &ctx).unwrap());
    }

    #[test]
    fn residue_ring_agrees_with_exact(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000, p in prime(), m in 1u32..8) {
        let ring = ResidueRing::new(p, m).unwrap();
        let ctx = PadicContext::with_prime(p, m).unwrap();
        prop_assume!(b != 0);
        let q = ring.mul(ring.from_i64(a), ring.inv(ring.from_i64(b)).unwrap());
        let exact = Rational::from((a, b));
        match residue(&exact, &ctx) {
            Ok(r) => prop_assert_eq!(Integer::from(ring.reduce(q).unwrap()), r),
            Err(_) => prop_assert!(ring.reduce(q).is_err()),
        }
    }

    #[test]
    fn binomial_transformation(n in -60i64..60, k in 0u64..30, j in 0u64..30) {
        prop_assume!(j <= k);
        let lhs = binomial(n, k) * binomial(k as i64, j);
        let rhs = binomial(n, j) * binomial(n - j as i64, k - j);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_rat_is_a_falling_product(num in -40i64..40, den in 1i64..6, k in 0u64..25) {
        let a = Rational::from((num, den));
        let mut expect = Rational::from(1);
        for i in 0..k {
            expect *= Rational::from(&a - i as i64) / Rational::from(i + 1);
        }
        prop_assert_eq!(binomial_rat(&a, k), expect);
    }

    #[test]
    fn pochhammer_shift(num in -40i64..40, den in 1i64..6, n in 0u64..30) {
        // (a)_{n+1} = (a)_n (a + n)
        let a = Rational::from((num, den));
        prop_assert_eq!(pochhammer(&a, n + 1), pochhammer(&a, n) * Rational::from(&a + n));
    }

    #[test]
    fn lucas_matches_binomial(n in 0u64..2000, k in 0u64..2000, p in prime()) {
        prop_assume!(k <= n);
        let expect = binomial(n as i64, k) % Integer::from(p.get());
        prop_assert_eq!(Integer::from(lucas_residue(n, k, p)), expect);
    }
}

/// Residues of integers against a schoolbook `%` on 1000 seeded random
/// `(n, p, m)` triples.
#[test]
fn integer_residue_matches_schoolbook() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, TestRng, TestRunner};
    let mut runner =
        TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(Config::default().rng_algorithm));
    let strat = (any::<i64>(), prime(), 1u32..10);
    for _ in 0..1000 {
        let (n, p, m) = strat.new_tree(&mut runner).unwrap().current();
        let ctx = PadicContext::with_prime(p, m).unwrap();
        let modulus = i128::from(p.get()).pow(m);
        let got = residue(&Rational::from(n), &ctx).unwrap();
        assert_eq!(got, Integer::from(schoolbook_mod(i128::from(n), modulus)), "n={n} p={p} m={m}");
        let ring = ResidueRing::new(p, m).unwrap();
        assert_eq!(i128::from(ring.reduce(ring.from_i64(n)).unwrap()), schoolbook_mod(i128::from(n), modulus));
    }
}
