use super::{NumError, Prime};

/// A nonzero element written as `p^val * unit`, with the unit reduced
/// modulo `p^m`; or exact zero.
///
/// Products and quotients stay exact in this form, which is what lets the
/// residue backend divide by factors that are multiples of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicNum {
    Zero,
    Scaled { val: i64, unit: u64 },
}

impl PadicNum {
    pub const ONE: PadicNum = PadicNum::Scaled { val: 0, unit: 1 };

    pub fn is_zero(self) -> bool {
        matches!(self, PadicNum::Zero)
    }
}

/// Word-sized arithmetic in `Z/p^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRing {
    p: u64,
    m: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(p: Prime, m: u32) -> Result<Self, NumError> {
        if m == 0 {
            return Err(NumError::ZeroExponent);
        }
        let modulus =
            p.get().checked_pow(m).filter(|&q| q < (1u64 << 62)).ok_or(NumError::ModulusTooLarge { p: p.get(), m })?;
        Ok(ResidueRing { p: p.get(), m, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow_mod(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit by the extended Euclidean algorithm.
    pub fn inv_unit(&self, u: u64) -> u64 {
        let (g, x) = ext_gcd(i128::from(u % self.modulus), i128::from(self.modulus));
        debug_assert_eq!(g, 1, "{u} is not a unit mod {}", self.modulus);
        x.rem_euclid(i128::from(self.modulus)) as u64
    }

    /// Split an integer into `p^val * unit`.
    pub fn from_i128(&self, x: i128) -> PadicNum {
        if x == 0 {
            return PadicNum::Zero;
        }
        let p = i128::from(self.p);
        let mut t = x;
        let mut val = 0;
        while t % p == 0 {
            t /= p;
            val += 1;
        }
        let unit = t.rem_euclid(i128::from(self.modulus)) as u64;
        PadicNum::Scaled { val, unit }
    }

    pub fn from_i64(&self, x: i64) -> PadicNum {
        self.from_i128(i128::from(x))
    }

    pub fn mul(&self, a: PadicNum, b: PadicNum) -> PadicNum {
        match (a, b) {
            (PadicNum::Scaled { val: v1, unit: u1 }, PadicNum::Scaled { val: v2, unit: u2 }) => {
                PadicNum::Scaled { val: v1 + v2, unit: self.mul_mod(u1, u2) }
            }
            _ => PadicNum::Zero,
        }
    }

    /// `None` when dividing by zero.
    pub fn inv(&self, a: PadicNum) -> Option<PadicNum> {
        match a {
            PadicNum::Zero => None,
            PadicNum::Scaled { val, unit } => Some(PadicNum::Scaled { val: -val, unit: self.inv_unit(unit) }),
        }
    }

    pub fn pow(&self, a: PadicNum, e: i64) -> Option<PadicNum> {
        match a {
            PadicNum::Zero if e > 0 => Some(PadicNum::Zero),
            PadicNum::Zero if e == 0 => Some(PadicNum::ONE),
            PadicNum::Zero => None,
            PadicNum::Scaled { val, unit } => {
                let u = self.pow_mod(unit, e.unsigned_abs());
                let u = if e < 0 { self.inv_unit(u) } else { u };
                Some(PadicNum::Scaled { val: val * e, unit: u })
            }
        }
    }

    /// Residue in `[0, p^m)`; fails for negative valuation.
    pub fn reduce(&self, a: PadicNum) -> Result<u64, NumError> {
        match a {
            PadicNum::Zero => Ok(0),
            PadicNum::Scaled { val, .. } if val < 0 => Err(NumError::PNotIntegral(val)),
            PadicNum::Scaled { val, .. } if val >= i64::from(self.m) => Ok(0),
            PadicNum::Scaled { val, unit } => Ok(self.mul_mod(self.p.pow(val as u32), unit)),
        }
    }

    /// Valuation of a residue, capped at `m` for zero.
    pub fn valuation_of(&self, mut x: u64) -> u32 {
        x %= self.modulus;
        if x == 0 {
            return self.m;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }
}

/// `(g, x)` with `a*x ≡ g (mod b)`, `g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}
