//! Univariate polynomials over F_p in sparse form.
//!
//! Terms are kept sorted by exponent with nonzero coefficients. The sparse
//! representation matters: iterated q-th power maps produce polynomials whose
//! degree is astronomical while their term count stays small (in
//! characteristic p the p-th power map sends `t^k` to `t^(pk)` without
//! creating new terms). Exponents are u128 so deep Frobenius towers never
//! overflow. Division, gcd and other genuinely dense algorithms convert to a
//! dense buffer and are capped by [`DENSE_LIMIT`].

use crate::error::{Error, Result};
use crate::field::fp::{mul_mod, pow_mod, FpElem};

/// Largest degree for which dense algorithms (divrem, gcd, dense mul) run.
pub const DENSE_LIMIT: u128 = 1 << 21;

/// Pairs-of-terms threshold under which multiplication stays fully sparse.
const SPARSE_MUL_LIMIT: usize = 1 << 14;

/// A polynomial over F_p, lowest-exponent term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    /// (exponent, coefficient) with coefficient in (0, p), ascending exponents.
    terms: Vec<(u128, u64)>,
}

impl Poly {
    pub fn zero(p: u64) -> Self {
        Poly {
            p,
            terms: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Poly::constant(1, p)
    }

    pub fn constant(c: i64, p: u64) -> Self {
        let c = c.rem_euclid(p as i64) as u64;
        if c == 0 {
            Poly::zero(p)
        } else {
            Poly {
                p,
                terms: vec![(0, c)],
            }
        }
    }

    pub fn monomial(c: i64, exp: u128, p: u64) -> Self {
        let c = c.rem_euclid(p as i64) as u64;
        if c == 0 {
            Poly::zero(p)
        } else {
            Poly {
                p,
                terms: vec![(exp, c)],
            }
        }
    }

    /// The variable `t`.
    pub fn t(p: u64) -> Self {
        Poly::monomial(1, 1, p)
    }

    /// Builds from dense coefficients, lowest degree first.
    pub fn from_dense(coeffs: &[i64], p: u64) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| {
                let c = c.rem_euclid(p as i64) as u64;
                (c != 0).then_some((i as u128, c))
            })
            .collect();
        Poly { p, terms }
    }

    fn from_terms(p: u64, mut terms: Vec<(u128, u64)>) -> Self {
        terms.retain(|&(_, c)| c != 0);
        terms.sort_unstable_by_key(|&(e, _)| e);
        Poly { p, terms }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[(u128, u64)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().is_none_or(|&(e, _)| e == 0)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u128> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn leading_coeff(&self) -> u64 {
        self.terms.last().map_or(0, |&(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Smallest exponent with nonzero coefficient, i.e. the valuation at t.
    pub fn valuation_at_t(&self) -> Option<u128> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn coeff(&self, exp: u128) -> u64 {
        match self.terms.binary_search_by_key(&exp, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed prime fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = self.terms[i];
            let (eb, cb) = other.terms[j];
            match ea.cmp(&eb) {
                std::cmp::Ordering::Less => {
                    out.push((ea, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((eb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = (ca + cb) % p;
                    if c != 0 {
                        out.push((ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { p, terms: out }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Poly {
            p,
            terms: self.terms.iter().map(|&(e, c)| (e, p - c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        let p = self.p;
        let c = c.rem_euclid(p as i64) as u64;
        if c == 0 {
            return Poly::zero(p);
        }
        Poly {
            p,
            terms: self
                .terms
                .iter()
                .map(|&(e, v)| (e, mul_mod(v, c, p)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(p);
        }
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        let out_deg = self.degree().unwrap() + other.degree().unwrap();
        if pairs <= SPARSE_MUL_LIMIT {
            return self.mul_sparse_naive(other);
        }
        if out_deg <= DENSE_LIMIT {
            return self.mul_dense(other);
        }
        self.mul_sparse_hashed(other)
    }

    fn mul_sparse_naive(&self, other: &Self) -> Self {
        let p = self.p;
        let mut acc: Vec<(u128, u64)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                acc.push((ea + eb, mul_mod(ca, cb, p)));
            }
        }
        acc.sort_unstable_by_key(|&(e, _)| e);
        let mut out: Vec<(u128, u64)> = Vec::with_capacity(acc.len());
        for (e, c) in acc {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = (last.1 + c) % p,
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Poly { p, terms: out }
    }

    fn mul_dense(&self, other: &Self) -> Self {
        let p = self.p;
        let out_deg = (self.degree().unwrap() + other.degree().unwrap()) as usize;
        let mut acc = vec![0u64; out_deg + 1];
        // Coefficients are < p; partial sums are reduced whenever they could
        // approach overflow. For small p the reduction never triggers.
        let guard = u64::MAX - p * p;
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                let slot = &mut acc[(ea + eb) as usize];
                let prod = ca * cb;
                if *slot > guard {
                    *slot %= p;
                }
                *slot += prod;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(e, c)| {
                let c = c % p;
                (c != 0).then_some((e as u128, c))
            })
            .collect();
        Poly { p, terms }
    }

    fn mul_sparse_hashed(&self, other: &Self) -> Self {
        let p = self.p;
        let mut acc: std::collections::HashMap<u128, u64> =
            std::collections::HashMap::with_capacity(self.terms.len() + other.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                let entry = acc.entry(ea + eb).or_insert(0);
                *entry = (*entry + mul_mod(ca, cb, p)) % p;
            }
        }
        Poly::from_terms(p, acc.into_iter().collect())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The Frobenius p-th power map: exponents scale by p, coefficients are
    /// fixed (Fermat). This is exact and never densifies.
    pub fn p_power(&self) -> Self {
        let p = self.p as u128;
        Poly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| {
                    let exp = e.checked_mul(p).expect("Frobenius exponent beyond u128");
                    (exp, c)
                })
                .collect(),
        }
    }

    /// True when every exponent is divisible by p, i.e. the polynomial is a
    /// p-th power (coefficients are automatically p-th powers over F_p).
    pub fn is_p_power(&self) -> bool {
        let p = self.p as u128;
        self.terms.iter().all(|&(e, _)| e % p == 0)
    }

    /// Inverse of [`Poly::p_power`]; caller must check [`Poly::is_p_power`].
    pub fn p_root(&self) -> Self {
        debug_assert!(self.is_p_power());
        let p = self.p as u128;
        Poly {
            p: self.p,
            terms: self.terms.iter().map(|&(e, c)| (e / p, c)).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        let lc = self.leading_coeff();
        if lc == 0 || lc == 1 {
            return self.clone();
        }
        let inv = FpElem::from_u64(lc, self.p).inv().unwrap().value();
        self.scale(inv as i64)
    }

    pub fn to_dense(&self) -> Result<Vec<u64>> {
        let deg = match self.degree() {
            None => return Ok(Vec::new()),
            Some(d) => d,
        };
        if deg > DENSE_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "dense conversion of degree {deg} exceeds limit {DENSE_LIMIT}"
            )));
        }
        let mut out = vec![0u64; deg as usize + 1];
        for &(e, c) in &self.terms {
            out[e as usize] = c;
        }
        Ok(out)
    }

    fn from_dense_u64(coeffs: Vec<u64>, p: u64) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| (c % p != 0).then_some((i as u128, c % p)))
            .collect();
        Poly { p, terms }
    }

    /// Euclidean division: returns (quotient, remainder). Dense; capped.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_field(divisor);
        let p = self.p;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ddeg = divisor.degree().unwrap();
        let ndeg = match self.degree() {
            None => return Ok((Poly::zero(p), Poly::zero(p))),
            Some(d) => d,
        };
        if ndeg < ddeg {
            return Ok((Poly::zero(p), self.clone()));
        }
        // Fast path: dividing by a monomial c*t^k.
        if divisor.terms.len() == 1 {
            let (de, dc) = divisor.terms[0];
            let dc_inv = FpElem::from_u64(dc, p).inv()?.value();
            let mut q = Vec::new();
            let mut r = Vec::new();
            for &(e, c) in &self.terms {
                if e >= de {
                    q.push((e - de, mul_mod(c, dc_inv, p)));
                } else {
                    r.push((e, c));
                }
            }
            return Ok((Poly { p, terms: q }, Poly { p, terms: r }));
        }
        let mut rem = self.to_dense()?;
        let div = divisor.to_dense()?;
        let lead_inv = FpElem::from_u64(div[ddeg as usize], p).inv()?.value();
        let mut quot = vec![0u64; (ndeg - ddeg) as usize + 1];
        for k in (0..=(ndeg - ddeg) as usize).rev() {
            let top = rem[k + ddeg as usize] % p;
            if top == 0 {
                continue;
            }
            let factor = mul_mod(top, lead_inv, p);
            quot[k] = factor;
            for (i, &dc) in div.iter().enumerate() {
                if dc == 0 {
                    continue;
                }
                let slot = &mut rem[k + i];
                let sub = mul_mod(factor, dc, p);
                *slot = (*slot + p - sub) % p;
            }
        }
        rem.truncate(ddeg as usize);
        Ok((Poly::from_dense_u64(quot, p), Poly::from_dense_u64(rem, p)))
    }

    /// Monic gcd. Two p-th powers descend to their p-th roots first, which
    /// keeps Frobenius-image inputs inside the dense cap. Constants are
    /// fixed points of the descent, so it only runs while a degree is left
    /// to shrink.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_field(other);
        // A nonzero constant is a unit: the gcd is 1.
        if (self.is_constant() && !self.is_zero()) || (other.is_constant() && !other.is_zero())
        {
            return Ok(Poly::one(self.p));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        // gcd(a^p, b^p) = gcd(a, b)^p: descend, then re-raise at the end.
        let mut depth = 0u32;
        while (a.degree() > Some(0) || b.degree() > Some(0))
            && !a.is_zero()
            && !b.is_zero()
            && a.is_p_power()
            && b.is_p_power()
        {
            a = a.p_root();
            b = b.p_root();
            depth += 1;
        }
        let mut g = if a.is_zero() || b.is_zero() {
            if a.is_zero() {
                b.make_monic()
            } else {
                a.make_monic()
            }
        } else {
            gcd_dense_euclid(&a, &b)?
        };
        for _ in 0..depth {
            g = g.p_power();
        }
        Ok(g)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let terms = self
            .terms
            .iter()
            .filter_map(|&(e, c)| {
                let k = (e % p as u128) as u64;
                (k != 0).then(|| (e - 1, mul_mod(c, k, p)))
            })
            .collect();
        Poly { p, terms }
    }

    pub fn eval(&self, x: FpElem) -> FpElem {
        let p = self.p;
        let mut acc = FpElem::zero(p);
        for &(e, c) in &self.terms {
            // x^e with e reduced mod p-1 for nonzero x (Fermat).
            let xe = if x.is_zero() {
                if e == 0 {
                    FpElem::one(p)
                } else {
                    FpElem::zero(p)
                }
            } else {
                let reduced = (e % (p as u128 - 1)) as u64;
                FpElem::from_u64(pow_mod(x.value(), reduced, p), p)
            };
            acc = acc.add(&xe.mul(&FpElem::from_u64(c, p)));
        }
        acc
    }

    /// Squarefree test via gcd with the derivative (plus p-power detection:
    /// a p-th power is never squarefree).
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() || self.is_constant() {
            return Ok(false);
        }
        if self.is_p_power() {
            return Ok(false);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(g.is_one())
    }
}

/// In-place Euclidean gcd on dense buffers; one conversion each way.
fn gcd_dense_euclid(a: &Poly, b: &Poly) -> Result<Poly> {
    let p = a.modulus();
    let p2 = p * p;
    let mut u = a.to_dense()?;
    let mut v = b.to_dense()?;
    let deg = |w: &[u64]| w.iter().rposition(|&c| c != 0);
    while let Some(dv) = deg(&v) {
        let Some(du) = deg(&u) else {
            std::mem::swap(&mut u, &mut v);
            break;
        };
        if du < dv {
            std::mem::swap(&mut u, &mut v);
            continue;
        }
        // Reduce u modulo v in place.
        let lead_inv = FpElem::from_u64(v[dv], p).inv()?.value();
        for k in (0..=du - dv).rev() {
            let top = u[k + dv];
            if top == 0 {
                continue;
            }
            let factor = mul_mod(top, lead_inv, p);
            for (i, &vc) in v.iter().enumerate().take(dv + 1) {
                if vc != 0 {
                    let slot = &mut u[k + i];
                    // factor * vc < p^2, and *slot < p, so this stays in u64
                    // for every modulus this crate accepts.
                    *slot = (*slot + p2 - factor * vc) % p;
                }
            }
        }
        std::mem::swap(&mut u, &mut v);
    }
    let terms = u
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| (c != 0).then_some((i as u128, c)))
        .collect();
    Ok(Poly { p, terms }.make_monic())
}

impl std::fmt::Display for Poly {
    /// Sparse `c*t^k` form, highest degree first, e.g. `t^3 + 2*t + 4`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, c) => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_dense(coeffs, 5)
    }

    /// Independent schoolbook Euclidean gcd over dense vectors; test oracle.
    #[allow(clippy::needless_range_loop)]
    fn gcd_oracle(a: &Poly, b: &Poly) -> Poly {
        fn deg(v: &[u64]) -> Option<usize> {
            v.iter().rposition(|&c| c != 0)
        }
        let p = 5u64;
        let mut a = a.to_dense().unwrap();
        let mut b = b.to_dense().unwrap();
        while deg(&b).is_some() {
            // remainder of a mod b
            while let (Some(da), Some(db)) = (deg(&a), deg(&b)) {
                if da < db {
                    break;
                }
                let lead = mul_mod(a[da], FpElem::from_u64(b[db], p).inv().unwrap().value(), p);
                for i in 0..=db {
                    let idx = da - db + i;
                    a[idx] = (a[idx] + p - mul_mod(lead, b[i], p)) % p;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        let mut out = Poly::from_dense_u64(a, p);
        out = out.make_monic();
        out
    }

    #[test]
    fn gcd_matches_euclid_oracle() {
        // gcd(t^2 - 1, t + 1) = t + 1 over F_5
        let f = poly(&[-1, 0, 1]);
        let g = poly(&[1, 1]);
        let got = f.gcd(&g).unwrap();
        assert_eq!(got, gcd_oracle(&f, &g));
        assert_eq!(got, poly(&[1, 1]));

        // gcd(t, t + 1) = 1
        let f = poly(&[0, 1]);
        let g = poly(&[1, 1]);
        let got = f.gcd(&g).unwrap();
        assert_eq!(got, gcd_oracle(&f, &g));
        assert!(got.is_one());
    }

    #[test]
    fn gcd_of_constants_terminates() {
        // Constants are p-th powers of themselves; the descent must not spin.
        let one = Poly::one(5);
        assert!(one.gcd(&one).unwrap().is_one());
        let c = Poly::constant(3, 5);
        assert!(c.gcd(&Poly::constant(2, 5)).unwrap().is_one());
        let t5 = Poly::monomial(1, 25, 5);
        assert!(t5.gcd(&one).unwrap().is_one());
    }

    #[test]
    fn gcd_with_zero_is_monic_argument() {
        let f = poly(&[2, 4]); // 4t + 2
        let got = f.gcd(&Poly::zero(5)).unwrap();
        assert_eq!(got, f.make_monic());
        let both = Poly::zero(5).gcd(&Poly::zero(5)).unwrap();
        assert!(both.is_zero());
    }

    #[test]
    fn freshmans_dream() {
        // (t+1)^5 = t^5 + 1 over F_5
        let f = poly(&[1, 1]);
        assert_eq!(f.pow(5), Poly::from_dense(&[1, 0, 0, 0, 0, 1], 5));
        assert_eq!(f.pow(5), f.p_power());
    }

    #[test]
    fn p_power_round_trip() {
        let f = poly(&[3, 1, 0, 2]);
        let g = f.p_power();
        assert!(g.is_p_power());
        assert_eq!(g.p_root(), f);
    }

    #[test]
    fn divrem_reconstructs() {
        let a = poly(&[1, 2, 0, 3, 4]);
        let b = poly(&[2, 0, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_huge_p_powers_descends() {
        // (t+1)^(5^9) and (t^2+t)^(5^9) share the factor (t+1)^(5^9).
        let mut a = poly(&[1, 1]);
        let mut b = poly(&[0, 1, 1]);
        for _ in 0..9 {
            a = a.p_power();
            b = b.p_power();
        }
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, a.make_monic());
    }

    #[test]
    fn deep_frobenius_exponents_stay_exact() {
        // 50 applications of the p-power map: degree 5^50, far past u64.
        let mut f = poly(&[1, 1]);
        for _ in 0..50 {
            f = f.p_power();
        }
        assert_eq!(f.degree(), Some(5u128.pow(50)));
        assert_eq!(f.term_count(), 2);
        for _ in 0..50 {
            assert!(f.is_p_power());
            f = f.p_root();
        }
        assert_eq!(f, poly(&[1, 1]));
    }

    #[test]
    fn display_sparse_form() {
        let f = poly(&[4, 2, 1]);
        assert_eq!(f.to_string(), "t^2 + 2*t + 4");
        assert_eq!(Poly::zero(5).to_string(), "0");
        assert_eq!(Poly::monomial(1, 7, 5).to_string(), "t^7");
    }

    #[test]
    fn eval_with_huge_exponents() {
        // t^(5^40) at x = 2: exponent reduces mod 4.
        let f = Poly::monomial(1, 5u128.pow(40), 5);
        let expect = pow_mod(2, 5u64.pow(9) % 4, 5); // 5^40 mod 4 = 1
        assert_eq!(f.eval(FpElem::new(2, 5)).value(), expect);
        assert_eq!(f.eval(FpElem::new(0, 5)).value(), 0);
        assert_eq!(Poly::one(5).eval(FpElem::new(0, 5)).value(), 1);
    }

    #[test]
    fn squarefree_detection() {
        assert!(poly(&[1, 0, 0, 1]).is_squarefree().unwrap()); // t^3+1, p=5
        assert!(!poly(&[1, 2, 1]).is_squarefree().unwrap()); // (t+1)^2
        assert!(!poly(&[1, 1]).p_power().is_squarefree().unwrap());
    }
}
