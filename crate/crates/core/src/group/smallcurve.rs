//! Affine group law over small finite fields F_q, used to check identities
//! after reduction at a place t = theta, and as an independent oracle for
//! the tower-coordinate group law.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::ext::{ExtElem, ExtField};
use crate::field::tower::TowerElem;
use crate::group::curve::{CurveParams, ECPoint};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SmallPoint {
    Infinity,
    Affine { x: ExtElem, y: ExtElem },
}

pub struct SmallCurve {
    pub field: Arc<ExtField>,
    pub curve: CurveParams,
    a4: ExtElem,
    a6: ExtElem,
}

impl SmallCurve {
    pub fn new(curve: CurveParams, field: Arc<ExtField>) -> Result<Self> {
        if field.p() != curve.prime() {
            return Err(Error::Validation("field and curve primes differ".into()));
        }
        let a4 = field.from_u64(curve.a4().value());
        let a6 = field.from_u64(curve.a6().value());
        Ok(SmallCurve {
            field,
            curve,
            a4,
            a6,
        })
    }

    pub fn rhs(&self, x: &ExtElem) -> ExtElem {
        let f = &self.field;
        let x3 = f.mul(&f.mul(x, x), x);
        f.add(&f.add(&x3, &f.mul(&self.a4, x)), &self.a6)
    }

    pub fn on_curve(&self, p: &SmallPoint) -> bool {
        match p {
            SmallPoint::Infinity => true,
            SmallPoint::Affine { x, y } => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &SmallPoint) -> SmallPoint {
        match p {
            SmallPoint::Infinity => SmallPoint::Infinity,
            SmallPoint::Affine { x, y } => SmallPoint::Affine {
                x: x.clone(),
                y: self.field.neg(y),
            },
        }
    }

    pub fn add(&self, p: &SmallPoint, q: &SmallPoint) -> SmallPoint {
        let f = &self.field;
        match (p, q) {
            (SmallPoint::Infinity, _) => q.clone(),
            (_, SmallPoint::Infinity) => p.clone(),
            (SmallPoint::Affine { x: x1, y: y1 }, SmallPoint::Affine { x: x2, y: y2 }) => {
                if x1 == x2 {
                    if y1 == &f.neg(y2) {
                        return SmallPoint::Infinity;
                    }
                    let num = f.add(&f.mul(&f.from_u64(3), &f.mul(x1, x1)), &self.a4);
                    let den = f.mul(&f.from_u64(2), y1);
                    let lambda = f.mul(&num, &f.inv(&den).expect("nonzero 2y"));
                    let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
                    let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
                    SmallPoint::Affine { x: x3, y: y3 }
                } else {
                    let lambda = f.mul(&f.sub(y2, y1), &f.inv(&f.sub(x2, x1)).expect("distinct x"));
                    let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
                    let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
                    SmallPoint::Affine { x: x3, y: y3 }
                }
            }
        }
    }

    pub fn scalar_mul(&self, n: &BigInt, p: &SmallPoint) -> SmallPoint {
        if n.is_negative() {
            return self.scalar_mul(&-n, &self.neg(p));
        }
        let mut acc = SmallPoint::Infinity;
        let mut base = p.clone();
        let (_, bytes) = n.to_bytes_le();
        let bits = n.bits();
        for i in 0..bits {
            if (bytes[(i / 8) as usize] >> (i % 8)) & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            if i + 1 < bits {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// q-power Frobenius of the scenario (not of this small field).
    pub fn frobenius(&self, q: u64, p: &SmallPoint) -> SmallPoint {
        match p {
            SmallPoint::Infinity => SmallPoint::Infinity,
            SmallPoint::Affine { x, y } => SmallPoint::Affine {
                x: self.field.pow(x, q),
                y: self.field.pow(y, q),
            },
        }
    }
}

/// Reduction of tower elements at the place t = theta, with s mapped to a
/// chosen square root of d(theta). Fails when a denominator vanishes.
pub struct Place {
    pub field: Arc<ExtField>,
    pub theta: ExtElem,
    pub s_image: ExtElem,
}

impl Place {
    /// Finds a place over F_(p^k) where d(theta) is a nonzero square and the
    /// index-th valid theta is chosen (deterministic).
    pub fn find(
        tower: &crate::field::tower::TowerField,
        k: u32,
        index: u64,
    ) -> Result<Option<Place>> {
        let field = ExtField::new(tower.prime(), k)?;
        let mut seen = 0u64;
        for i in 0..field.q() {
            let theta = field.element(i);
            let d_val = field.eval_poly(tower.modulus(), &theta);
            if field.is_zero(&d_val) || !field.is_square(&d_val) {
                continue;
            }
            if seen == index {
                let s_image = field.sqrt(&d_val).expect("square");
                return Ok(Some(Place {
                    field,
                    theta,
                    s_image,
                }));
            }
            seen += 1;
        }
        Ok(None)
    }

    /// Reduces a + b*s at the place; None when a denominator vanishes.
    pub fn reduce(&self, elem: &TowerElem) -> Result<Option<ExtElem>> {
        let f = &self.field;
        let eval_rat = |r: &crate::field::ratfunc::RatFunc| -> Option<ExtElem> {
            let den = f.eval_poly(r.den(), &self.theta);
            if f.is_zero(&den) {
                return None;
            }
            let num = f.eval_poly(r.num(), &self.theta);
            Some(f.mul(&num, &f.inv(&den).expect("nonzero")))
        };
        let Some(a) = eval_rat(elem.rat_part()) else {
            return Ok(None);
        };
        let Some(b) = eval_rat(elem.s_part()) else {
            return Ok(None);
        };
        Ok(Some(f.add(&a, &f.mul(&b, &self.s_image))))
    }

    /// Reduces a curve point; None when reduction is not possible here.
    pub fn reduce_point(&self, point: &ECPoint, curve: &SmallCurve) -> Result<Option<SmallPoint>> {
        match point.xy() {
            None => Ok(Some(SmallPoint::Infinity)),
            Some((x, y)) => {
                let Some(xr) = self.reduce(x)? else {
                    return Ok(None);
                };
                let Some(yr) = self.reduce(y)? else {
                    return Ok(None);
                };
                let reduced = SmallPoint::Affine { x: xr, y: yr };
                if !curve.on_curve(&reduced) {
                    return Err(Error::Validation(
                        "reduction left the curve; bad place choice".into(),
                    ));
                }
                Ok(Some(reduced))
            }
        }
    }
}
