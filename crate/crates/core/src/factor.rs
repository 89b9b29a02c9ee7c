//! Factorization of `F_p[t]` polynomials into monic irreducibles.
//!
//! Trial division by all monic irreducibles of degree up to half the input
//! degree. Scenario polynomials have tiny cores; huge inputs produced by
//! Frobenius towers are reduced first through the p-th-root descent, which
//! multiplies all multiplicities by p per step.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::poly::Poly;

/// Degree cap on the factorization core after p-power descent.
const FACTOR_DEGREE_LIMIT: u128 = 512;

/// Cache of monic irreducibles by degree for one prime p.
pub struct IrreducibleCache {
    p: u64,
    by_degree: Vec<Vec<Poly>>,
}

impl IrreducibleCache {
    pub fn new(p: u64) -> Self {
        IrreducibleCache {
            p,
            by_degree: vec![Vec::new()],
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// All monic irreducibles of exactly the given degree.
    pub fn of_degree(&mut self, d: usize) -> Result<&[Poly]> {
        while self.by_degree.len() <= d {
            let next = self.by_degree.len();
            let polys = self.enumerate_degree(next)?;
            self.by_degree.push(polys);
        }
        Ok(&self.by_degree[d])
    }

    fn enumerate_degree(&mut self, d: usize) -> Result<Vec<Poly>> {
        let p = self.p;
        let count = p
            .checked_pow(d as u32)
            .ok_or_else(|| Error::ResourceLimit("irreducible enumeration too large".into()))?;
        if count > 2_000_000 {
            return Err(Error::ResourceLimit(format!(
                "enumerating {count} monic polynomials of degree {d}"
            )));
        }
        let mut out = Vec::new();
        'candidate: for index in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut idx = index;
            for _ in 0..d {
                coeffs.push((idx % p) as i64);
                idx /= p;
            }
            coeffs.push(1);
            let f = Poly::from_dense(&coeffs, p);
            // Trial divide by the smaller cached irreducibles.
            for lower in 1..=(d / 2) {
                for q in &self.by_degree[lower] {
                    if f.divrem(q)?.1.is_zero() {
                        continue 'candidate;
                    }
                }
            }
            out.push(f);
        }
        Ok(out)
    }
}

/// Monic factorization `f = unit * prod pi^ei` with `pi` monic irreducible.
/// Returns (unit in F_p^*, sorted factor map).
pub fn factor(f: &Poly, cache: &mut IrreducibleCache) -> Result<(u64, BTreeMap<Poly, u64>)> {
    assert_eq!(f.modulus(), cache.prime(), "mixed prime fields");
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let unit = f.leading_coeff();
    let mut core = f.make_monic();
    // p-th root descent: f = g^(p^k) contributes multiplicity p^k per factor.
    let mut power = 1u64;
    while !core.is_constant() && core.is_p_power() {
        core = core.p_root();
        power = power
            .checked_mul(cache.prime())
            .ok_or_else(|| Error::ResourceLimit("factor multiplicity overflow".into()))?;
    }
    let deg = core.degree().unwrap_or(0);
    if deg > FACTOR_DEGREE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "factorization core of degree {deg} exceeds limit {FACTOR_DEGREE_LIMIT}"
        )));
    }
    let mut factors = BTreeMap::new();
    let mut remaining = core;
    let mut d = 1usize;
    while remaining.degree().unwrap_or(0) >= 1 {
        let rdeg = remaining.degree().unwrap() as usize;
        if d > rdeg / 2 {
            // Remainder is irreducible.
            *factors.entry(remaining.clone()).or_insert(0) += power;
            break;
        }
        for q in cache.of_degree(d)?.to_vec() {
            loop {
                let (quot, rem) = remaining.divrem(&q)?;
                if rem.is_zero() {
                    *factors.entry(q.clone()).or_insert(0) += power;
                    remaining = quot;
                } else {
                    break;
                }
            }
        }
        d += 1;
    }
    Ok((unit, factors))
}

// Poly ordering so factor maps are deterministic: by degree, then terms.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.terms().cmp(other.terms()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_product_of_linears() {
        let mut cache = IrreducibleCache::new(5);
        // 2 * t^2 * (t+1) = 2t^3 + 2t^2
        let f = Poly::from_dense(&[0, 0, 2, 2], 5);
        let (unit, factors) = factor(&f, &mut cache).unwrap();
        assert_eq!(unit, 2);
        let t = Poly::t(5);
        let t1 = Poly::from_dense(&[1, 1], 5);
        assert_eq!(factors.get(&t), Some(&2));
        assert_eq!(factors.get(&t1), Some(&1));
        assert_eq!(factors.len(), 2);
    }

    #[test]
    fn factors_irreducible_quadratic() {
        let mut cache = IrreducibleCache::new(5);
        // t^2 + 2 has no roots mod 5 (squares are 0,1,4), hence irreducible.
        let f = Poly::from_dense(&[2, 0, 1], 5);
        let (unit, factors) = factor(&f, &mut cache).unwrap();
        assert_eq!(unit, 1);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors.get(&f), Some(&1));
    }

    #[test]
    fn frobenius_power_descent() {
        let mut cache = IrreducibleCache::new(5);
        // (t+1)^(5^6) via the p-power map.
        let mut f = Poly::from_dense(&[1, 1], 5);
        for _ in 0..6 {
            f = f.p_power();
        }
        let (_, factors) = factor(&f, &mut cache).unwrap();
        let t1 = Poly::from_dense(&[1, 1], 5);
        assert_eq!(factors.get(&t1), Some(&(5u64.pow(6))));
        assert_eq!(factors.len(), 1);
    }

    #[test]
    fn reconstruction_property() {
        let mut cache = IrreducibleCache::new(5);
        let f = Poly::from_dense(&[3, 1, 4, 1, 2], 5);
        let (unit, factors) = factor(&f, &mut cache).unwrap();
        let mut rebuilt = Poly::constant(unit as i64, 5);
        for (q, e) in &factors {
            rebuilt = rebuilt.mul(&q.pow(*e));
        }
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        let mut cache = IrreducibleCache::new(5);
        // Over F_5: 5 linear, (25-5)/2 = 10 quadratic, (125-5)/3 = 40 cubic.
        assert_eq!(cache.of_degree(1).unwrap().len(), 5);
        assert_eq!(cache.of_degree(2).unwrap().len(), 10);
        assert_eq!(cache.of_degree(3).unwrap().len(), 40);
    }
}
