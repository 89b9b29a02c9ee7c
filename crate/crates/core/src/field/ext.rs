//! Small finite fields F_q with q = p^k.
//!
//! Just enough arithmetic for exhaustive point counting and for checking
//! identities after reduction at a place t = theta. Elements are coefficient
//! vectors modulo a fixed irreducible polynomial, found by scanning monic
//! candidates. Everything here assumes q stays within enumeration range.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::fp::{check_prime, mul_mod};
use crate::field::poly::Poly;

#[derive(Debug)]
pub struct ExtField {
    p: u64,
    k: u32,
    q: u64,
    /// Dense coefficients of the monic irreducible modulus, lowest first.
    modulus: Vec<u64>,
}

/// Element as dense coefficients of length k (lowest first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElem {
    coeffs: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Result<Arc<Self>> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = p
            .checked_pow(k)
            .ok_or_else(|| Error::ResourceLimit("extension field size overflows".into()))?;
        if q > 2_000_000 {
            return Err(Error::ResourceLimit(format!(
                "extension field of size {q} beyond enumeration range"
            )));
        }
        let modulus = find_irreducible(p, k)?;
        Ok(Arc::new(ExtField { p, k, q, modulus }))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> ExtElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> ExtElem {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = c % self.p;
        ExtElem { coeffs }
    }

    /// The element with index i in the lexicographic enumeration of F_q.
    pub fn element(&self, mut index: u64) -> ExtElem {
        let mut coeffs = vec![0; self.k as usize];
        for c in coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        ExtElem { coeffs }
    }

    pub fn is_zero(&self, x: &ExtElem) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        ExtElem { coeffs }
    }

    pub fn sub(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        ExtElem { coeffs }
    }

    pub fn neg(&self, x: &ExtElem) -> ExtElem {
        self.sub(&self.zero(), x)
    }

    pub fn mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        // Reduce modulo the monic modulus.
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + mul_mod(c, self.p - m, self.p)) % self.p;
            }
        }
        prod.truncate(k);
        ExtElem { coeffs: prod }
    }

    pub fn pow(&self, x: &ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, x: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q - 2))
    }

    /// Quadratic character: 1 for nonzero squares, q-1 pattern for nonsquares
    /// (returned as the canonical representative of x^((q-1)/2)).
    pub fn is_square(&self, x: &ExtElem) -> bool {
        if self.is_zero(x) {
            return true;
        }
        let chi = self.pow(x, (self.q - 1) / 2);
        chi == self.one()
    }

    /// A square root by scanning; None when x is a nonsquare.
    pub fn sqrt(&self, x: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(x) {
            return Some(self.zero());
        }
        if !self.is_square(x) {
            return None;
        }
        (0..self.q)
            .map(|i| self.element(i))
            .find(|y| &self.mul(y, y) == x)
    }

    /// Evaluates an `F_p[t]` polynomial at an element of this field. Huge
    /// Frobenius exponents reduce mod q - 1 on nonzero arguments.
    pub fn eval_poly(&self, f: &Poly, x: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        let x_zero = self.is_zero(x);
        for &(e, c) in f.terms() {
            let xe = if x_zero {
                if e == 0 {
                    self.one()
                } else {
                    self.zero()
                }
            } else {
                self.pow(x, (e % (self.q as u128 - 1)) as u64)
            };
            let term = self.mul(&xe, &self.from_u64(c));
            acc = self.add(&acc, &term);
        }
        acc
    }
}

/// Finds a monic irreducible of degree k over F_p by scanning candidates and
/// testing with the Frobenius criterion: f irreducible of degree k iff
/// t^(p^k) = t mod f and gcd(t^(p^j) - t, f) = 1 for all proper divisors j.
fn find_irreducible(p: u64, k: u32) -> Result<Vec<u64>> {
    if k == 1 {
        return Ok(vec![0, 1]); // t itself
    }
    let count = p.checked_pow(k).unwrap();
    for index in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut idx = index;
        for _ in 0..k {
            coeffs.push((idx % p) as i64);
            idx /= p;
        }
        coeffs.push(1);
        let f = Poly::from_dense(&coeffs.to_vec(), p);
        if is_irreducible(&f, p, k)? {
            return f.to_dense();
        }
    }
    Err(Error::Validation(format!(
        "no irreducible of degree {k} over F_{p} found"
    )))
}

fn is_irreducible(f: &Poly, p: u64, k: u32) -> Result<bool> {
    // t^(p^j) mod f by repeated p-th powering with reduction.
    let t = Poly::t(p);
    let mut frob = t.clone();
    let mut powers = Vec::with_capacity(k as usize);
    for _ in 0..k {
        frob = frob.p_power().divrem(f)?.1;
        powers.push(frob.clone());
    }
    if powers[k as usize - 1] != t {
        return Ok(false);
    }
    for j in 1..k {
        if k.is_multiple_of(j) {
            let diff = powers[j as usize - 1].sub(&t);
            if !f.gcd(&diff)?.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
