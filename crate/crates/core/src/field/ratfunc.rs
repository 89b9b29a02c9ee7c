//! The rational function field F_p(t).
//!
//! Values are kept in reduced normal form after every operation: monic
//! denominator and gcd(num, den) = 1. Equality is therefore representational,
//! which keeps enumeration output deterministic.

use crate::error::{Error, Result};
use crate::field::fp::FpElem;
use crate::field::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` and normalizes. Fails on zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                den: Poly::one(num.modulus()),
                num,
            });
        }
        if den.is_one() {
            return Ok(RatFunc { num, den });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g)?.0, den.divrem(&g)?.0)
        };
        // Scale to monic denominator.
        let lc = den.leading_coeff();
        if lc == 1 {
            return Ok(RatFunc { num, den });
        }
        let inv = FpElem::from_u64(lc, den.modulus()).inv()?.value() as i64;
        Ok(RatFunc {
            num: num.scale(inv),
            den: den.scale(inv),
        })
    }

    /// Wraps an already-coprime, monic-denominator pair without re-reducing.
    /// Used by operations that preserve the invariant structurally (p-th
    /// power maps, monomial scaling by units).
    fn new_normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        debug_assert!(num
            .gcd(&den)
            .map(|g| g.is_one() || num.is_zero())
            .unwrap_or(true));
        RatFunc { num, den }
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            den: Poly::one(num.modulus()),
            num,
        }
    }

    pub fn zero(p: u64) -> Self {
        RatFunc::from_poly(Poly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        RatFunc::from_poly(Poly::one(p))
    }

    pub fn constant(c: i64, p: u64) -> Self {
        RatFunc::from_poly(Poly::constant(c, p))
    }

    /// The coordinate `t`.
    pub fn t(p: u64) -> Self {
        RatFunc::from_poly(Poly::t(p))
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// max(deg num, deg den); height proxy used for search pruning.
    pub fn degree_proxy(&self) -> u128 {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFunc::new_normalized(self.num.neg(), self.den.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.modulus());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: self.den.clone(),
            };
        }
        // Cross-reduce first so the big multiplications stay small; a
        // denominator of 1 needs no gcd on its side.
        let (a, d) = if other.den.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            let g1 = self.num.gcd(&other.den).expect("gcd in bounds");
            if g1.is_one() {
                (self.num.clone(), other.den.clone())
            } else {
                (
                    self.num.divrem(&g1).unwrap().0,
                    other.den.divrem(&g1).unwrap().0,
                )
            }
        };
        let (c, b) = if self.den.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            let g2 = other.num.gcd(&self.den).expect("gcd in bounds");
            if g2.is_one() {
                (other.num.clone(), self.den.clone())
            } else {
                (
                    other.num.divrem(&g2).unwrap().0,
                    self.den.divrem(&g2).unwrap().0,
                )
            }
        };
        RatFunc::new(a.mul(&c), b.mul(&d)).expect("nonzero denominator")
    }

    /// num and den are already coprime, so the inverse only rescales to a
    /// monic denominator; no gcd runs.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coeff();
        if lc == 1 {
            return Ok(RatFunc {
                num: self.den.clone(),
                den: self.num.clone(),
            });
        }
        let inv = FpElem::from_u64(lc, self.modulus()).inv()?.value() as i64;
        Ok(RatFunc {
            num: self.den.scale(inv),
            den: self.num.scale(inv),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_i64(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.pow_i64(-exp);
        }
        let mut acc = RatFunc::one(self.modulus());
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

    /// Frobenius p-th power. Coprimality and monicity survive the map, so no
    /// re-reduction happens; this is what keeps iterated Frobenius cheap.
    pub fn p_power(&self) -> Self {
        RatFunc {
            num: self.num.p_power(),
            den: self.den.p_power(),
        }
    }

    /// The leading unit: lc(num) in F_p^* (denominator is monic). Zero for 0.
    pub fn leading_unit(&self) -> u64 {
        self.num.leading_coeff()
    }

    pub fn eval(&self, x: FpElem) -> Result<FpElem> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x).mul(&den.inv()?))
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}
