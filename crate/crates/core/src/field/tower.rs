//! The quadratic extension `L = F_p(t)[s]/(s^2 - d(t))`.
//!
//! One fixed tower per scenario plays the role of the coordinate field for
//! every point. Elements are written a + b*s with a, b rational functions.
//! The defining d must be nonconstant and squarefree, which makes s^2 - d
//! irreducible over F_p(t) and L a field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::fp::check_prime;
use crate::field::poly::Poly;
use crate::field::ratfunc::RatFunc;

/// Shared description of one tower extension.
#[derive(Debug)]
pub struct TowerField {
    p: u64,
    modulus: Poly,
    /// d^((p-1)/2), the factor picked up by s under the p-power map:
    /// s^p = s * (s^2)^((p-1)/2) = s * d^((p-1)/2).
    frob_factor: Poly,
}

impl TowerField {
    pub fn new(modulus: Poly) -> Result<Arc<Self>> {
        let p = modulus.modulus();
        check_prime(p)?;
        if modulus.is_constant() {
            return Err(Error::Validation(
                "tower modulus d(t) must be nonconstant".into(),
            ));
        }
        if !modulus.is_squarefree()? {
            return Err(Error::Validation(
                "tower modulus d(t) must be squarefree".into(),
            ));
        }
        let frob_factor = modulus.pow((p - 1) / 2);
        Ok(Arc::new(TowerField {
            p,
            modulus,
            frob_factor,
        }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
}

impl PartialEq for TowerField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for TowerField {}

/// An element a + b*s of the tower.
#[derive(Clone)]
pub struct TowerElem {
    a: RatFunc,
    b: RatFunc,
    field: Arc<TowerField>,
}

impl TowerElem {
    pub fn new(a: RatFunc, b: RatFunc, field: Arc<TowerField>) -> Self {
        TowerElem { a, b, field }
    }

    pub fn from_rat(a: RatFunc, field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem {
            a,
            b: RatFunc::zero(p),
            field,
        }
    }

    pub fn from_poly(a: Poly, field: Arc<TowerField>) -> Self {
        TowerElem::from_rat(RatFunc::from_poly(a), field)
    }

    pub fn zero(field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem::from_rat(RatFunc::zero(p), field)
    }

    pub fn one(field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem::from_rat(RatFunc::one(p), field)
    }

    pub fn constant(c: i64, field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem::from_rat(RatFunc::constant(c, p), field)
    }

    /// The coordinate t.
    pub fn t(field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem::from_rat(RatFunc::t(p), field)
    }

    /// The generator s with s^2 = d(t).
    pub fn s(field: Arc<TowerField>) -> Self {
        let p = field.prime();
        TowerElem {
            a: RatFunc::zero(p),
            b: RatFunc::one(p),
            field,
        }
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.prime()
    }

    pub fn rat_part(&self) -> &RatFunc {
        &self.a
    }

    pub fn s_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when the element lies in the base field F_p(t).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Height proxy: max degree over both components.
    pub fn degree_proxy(&self) -> u128 {
        self.a.degree_proxy().max(self.b.degree_proxy())
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field || Arc::ptr_eq(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    fn same_field(&self, other: &Self) {
        self.check_same_field(other)
            .expect("tower modulus mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        TowerElem {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
            field: self.field.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        TowerElem {
            a: self.a.neg(),
            b: self.b.neg(),
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// (a1 + b1 s)(a2 + b2 s) = (a1 a2 + b1 b2 d) + (a1 b2 + a2 b1) s.
    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let d = RatFunc::from_poly(self.field.modulus().clone());
        let a = self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(&d));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        TowerElem {
            a,
            b,
            field: self.field.clone(),
        }
    }

    /// Checked variant surfacing the modulus-mismatch error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.mul(other))
    }

    /// Norm to the base field: a^2 - b^2 d.
    pub fn norm(&self) -> RatFunc {
        let d = RatFunc::from_poly(self.field.modulus().clone());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&d))
    }

    /// (a + b s)^-1 = (a - b s)/(a^2 - b^2 d).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        // d squarefree and nonconstant means s is not rational, so the norm
        // of a nonzero element cannot vanish; a zero norm here is a bug.
        assert!(!n.is_zero(), "vanishing norm for nonzero tower element");
        let n_inv = n.inv()?;
        Ok(TowerElem {
            a: self.a.mul(&n_inv),
            b: self.b.neg().mul(&n_inv),
            field: self.field.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The p-th power map: (a + b s)^p = a^p + b^p d^((p-1)/2) s.
    pub fn p_power(&self) -> Self {
        let bp = self.b.p_power();
        let factor = RatFunc::from_poly(self.field.frob_factor.clone());
        TowerElem {
            a: self.a.p_power(),
            b: bp.mul(&factor),
            field: self.field.clone(),
        }
    }

    /// x^q for q = p^k, k >= 1, by iterating the p-power map.
    pub fn qth_power(&self, q: u64) -> Result<Self> {
        let k = validate_prime_power(q, self.prime())?;
        let mut out = self.clone();
        for _ in 0..k {
            out = out.p_power();
        }
        Ok(out)
    }

    /// Integer power (square-and-multiply); negative exponents invert.
    pub fn pow_i64(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.pow_i64(-exp);
        }
        let mut acc = TowerElem::one(self.field.clone());
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }
}

/// Returns k with q = p^k (k >= 1) or an error.
pub fn validate_prime_power(q: u64, p: u64) -> Result<u32> {
    let mut v = q;
    let mut k = 0u32;
    while v > 1 && v.is_multiple_of(p) {
        v /= p;
        k += 1;
    }
    if v == 1 && k >= 1 {
        Ok(k)
    } else {
        Err(Error::NotPrimePower { q, p })
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.a == other.a && self.b == other.b
    }
}
impl Eq for TowerElem {}

impl std::fmt::Display for TowerElem {
    /// "a + (b)*s" with each part in num/den sparse form.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "({})*s", self.b);
        }
        write!(f, "{} + ({})*s", self.a, self.b)
    }
}

impl std::fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Arc<TowerField> {
        // s^2 = t^3 + 1 over F_5
        TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap()
    }

    #[test]
    fn defining_relation() {
        let tw = tower();
        let s = TowerElem::s(tw.clone());
        let d = TowerElem::from_poly(Poly::from_dense(&[1, 0, 0, 1], 5), tw);
        assert_eq!(s.mul(&s), d);
    }

    #[test]
    fn one_is_identity() {
        let tw = tower();
        let x = TowerElem::new(
            RatFunc::new(Poly::from_dense(&[1, 2], 5), Poly::from_dense(&[0, 1], 5)).unwrap(),
            RatFunc::t(5),
            tw.clone(),
        );
        assert_eq!(x.mul(&TowerElem::one(tw)), x);
    }

    #[test]
    fn product_of_conjugates() {
        // (1+s)(1-s) = 1 - (t^3+1) = -t^3 over F_5
        let tw = tower();
        let one = TowerElem::one(tw.clone());
        let s = TowerElem::s(tw.clone());
        let lhs = one.add(&s).mul(&one.sub(&s));
        let expect = TowerElem::from_poly(Poly::monomial(-1, 3, 5), tw);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn inverse_of_s() {
        // s^-1 = s/(t^3+1); verify by multiplying back to 1.
        let tw = tower();
        let s = TowerElem::s(tw.clone());
        let inv = s.inv().unwrap();
        assert!(s.mul(&inv).is_one());
        let expected = TowerElem::new(
            RatFunc::zero(5),
            RatFunc::new(Poly::one(5), Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap(),
            tw,
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn trivial_inverses() {
        let tw = tower();
        assert!(TowerElem::one(tw.clone()).inv().unwrap().is_one());
        let t = TowerElem::t(tw.clone());
        assert_eq!(
            t.inv().unwrap(),
            TowerElem::from_rat(RatFunc::t(5).inv().unwrap(), tw.clone())
        );
        assert!(TowerElem::zero(tw).inv().is_err());
    }

    #[test]
    fn s_fifth_power() {
        // s^5 = s * (s^2)^2 = (t^3+1)^2 * s
        let tw = tower();
        let s = TowerElem::s(tw.clone());
        let got = s.qth_power(5).unwrap();
        let d2 = Poly::from_dense(&[1, 0, 0, 1], 5).pow(2);
        let expect = TowerElem::new(RatFunc::zero(5), RatFunc::from_poly(d2), tw);
        assert_eq!(got, expect);
    }

    #[test]
    fn qth_power_validation() {
        let tw = tower();
        let x = TowerElem::t(tw);
        assert!(x.qth_power(25).is_ok());
        assert!(matches!(x.qth_power(10), Err(Error::NotPrimePower { .. })));
        assert!(matches!(x.qth_power(1), Err(Error::NotPrimePower { .. })));
        assert!(x.qth_power(1).is_err());
    }

    #[test]
    fn qth_power_of_one() {
        let tw = tower();
        assert!(TowerElem::one(tw).qth_power(125).unwrap().is_one());
    }

    #[test]
    fn modulus_mismatch_detected() {
        let tw1 = tower();
        let tw2 = TowerField::new(Poly::from_dense(&[0, 1, 0, 1], 5)).unwrap();
        let x = TowerElem::t(tw1);
        let y = TowerElem::t(tw2);
        assert!(matches!(x.checked_mul(&y), Err(Error::ModulusMismatch)));
    }

    #[test]
    fn squarefree_modulus_enforced() {
        // (t+1)^2 is not squarefree
        let sq = Poly::from_dense(&[1, 1], 5).pow(2);
        assert!(TowerField::new(sq).is_err());
        // constants rejected
        assert!(TowerField::new(Poly::constant(2, 5)).is_err());
    }
}
