//! Prime field arithmetic.
//!
//! Elements carry their modulus, so values from different fields can never
//! be mixed silently. Only primes `p >= 5` are accepted: the chord-tangent
//! group law downstream needs characteristic different from 2 and 3.

use crate::error::{Error, Result};

/// Deterministic primality check, sufficient for any `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    // Miller-Rabin with a base set that is exact for u64.
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Validates that `p` is a prime suitable for this crate.
pub fn check_prime(p: u64) -> Result<()> {
    if p >= 5 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    p: u64,
    value: u64,
}

impl FpElem {
    /// Reduces `value` into `[0, p)`. The caller is responsible for having
    /// validated `p` via [`check_prime`] (group and field constructors do).
    pub fn new(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        FpElem { p, value: v }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        FpElem {
            p,
            value: value % p,
        }
    }

    pub fn zero(p: u64) -> Self {
        FpElem { p, value: 0 }
    }

    pub fn one(p: u64) -> Self {
        FpElem { p, value: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed prime fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let mut v = self.value + other.value;
        if v >= self.p {
            v -= self.p;
        }
        FpElem {
            p: self.p,
            value: v,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.p - other.value
        };
        FpElem {
            p: self.p,
            value: v,
        }
    }

    pub fn neg(&self) -> Self {
        let v = if self.value == 0 {
            0
        } else {
            self.p - self.value
        };
        FpElem {
            p: self.p,
            value: v,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        FpElem {
            p: self.p,
            value: mul_mod(self.value, other.value, self.p),
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        FpElem {
            p: self.p,
            value: pow_mod(self.value, exp, self.p),
        }
    }

    /// Multiplicative inverse via Fermat: x^(p-2).
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    /// Legendre symbol as 0, 1 or p-1 (for -1).
    pub fn quadratic_character(&self) -> u64 {
        pow_mod(self.value, (self.p - 1) / 2, self.p)
    }
}

impl std::fmt::Debug for FpElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl std::fmt::Display for FpElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Discrete logarithm in F_p^* with respect to a fixed generator.
/// Table-based; p stays small in every scenario this crate supports.
pub struct UnitGroup {
    p: u64,
    generator: u64,
    log_table: Vec<u32>,
}

impl UnitGroup {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        if p > 1 << 22 {
            return Err(Error::ResourceLimit(format!(
                "unit group table for p = {p} too large"
            )));
        }
        let generator = (2..p)
            .find(|&g| Self::is_generator(g, p))
            .expect("F_p^* is cyclic");
        let mut log_table = vec![0u32; p as usize];
        let mut acc = 1u64;
        for k in 0..p - 1 {
            log_table[acc as usize] = k as u32;
            acc = mul_mod(acc, generator, p);
        }
        Ok(UnitGroup {
            p,
            generator,
            log_table,
        })
    }

    fn is_generator(g: u64, p: u64) -> bool {
        // Order of F_p^* is p-1; check g^((p-1)/q) != 1 for prime divisors q.
        let mut n = p - 1;
        let mut divisors = Vec::new();
        let mut q = 2;
        while q * q <= n {
            if n.is_multiple_of(q) {
                divisors.push(q);
                while n.is_multiple_of(q) {
                    n /= q;
                }
            }
            q += 1;
        }
        if n > 1 {
            divisors.push(n);
        }
        divisors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.p - 1
    }

    /// log of a nonzero unit with respect to the fixed generator.
    pub fn log(&self, unit: u64) -> Result<u64> {
        let u = unit % self.p;
        if u == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log_table[u as usize] as u64)
    }
}
