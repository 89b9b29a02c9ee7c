//! The Frobenius endomorphism as an operator: application to points, point
//! counting, characteristic polynomials, and verification of integral
//! relations h(F) = 0.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::ext::ExtField;
use crate::field::fp::pow_mod;
use crate::field::tower::validate_prime_power;
use crate::group::curve::{CurveParams, ECPoint};
use crate::group::point::ProductPoint;
use crate::intpoly::IntPoly;

/// Enumeration ceiling for point counting.
const COUNT_LIMIT: u64 = 1_000_000;

/// The q-power Frobenius endomorphism of groups defined over F_q.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrobeniusOp {
    p: u64,
    q: u64,
}

impl FrobeniusOp {
    pub fn new(q: u64, p: u64) -> Result<Self> {
        validate_prime_power(q, p)?;
        Ok(FrobeniusOp { p, q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// F^n applied to a product point: every coordinate to the q^n power.
    pub fn apply(&self, point: &ProductPoint, iterations: u32) -> Result<ProductPoint> {
        let mut out = point.clone();
        for _ in 0..iterations {
            out = out.qth_power(self.q)?;
        }
        Ok(out)
    }

    /// F^n on a bare curve point.
    pub fn apply_ec(&self, point: &ECPoint, iterations: u32) -> Result<ECPoint> {
        let mut out = point.clone();
        for _ in 0..iterations {
            out = out.frobenius(self.q)?;
        }
        Ok(out)
    }
}

/// #E(F_q) including the point at infinity, by exhaustive x-enumeration with
/// a quadratic-residue test. For q = p^k with k > 1 the extension field is
/// built on the fly.
pub fn count_points(curve: &CurveParams, q: u64) -> Result<u64> {
    let p = curve.prime();
    let k = validate_prime_power(q, p)?;
    if q > COUNT_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "point counting over F_{q} beyond the enumeration limit {COUNT_LIMIT}"
        )));
    }
    if k == 1 {
        let a4 = curve.a4().value();
        let a6 = curve.a6().value();
        let mut count = 1u64; // infinity
        for x in 0..p {
            let rhs = (pow_mod(x, 3, p) + a4 * x % p + a6) % p;
            if rhs == 0 {
                count += 1;
            } else if pow_mod(rhs, (p - 1) / 2, p) == 1 {
                count += 2;
            }
        }
        return Ok(count);
    }
    let field = ExtField::new(p, k)?;
    let a4 = field.from_u64(curve.a4().value());
    let a6 = field.from_u64(curve.a6().value());
    let mut count = 1u64;
    for i in 0..q {
        let x = field.element(i);
        let x3 = field.mul(&field.mul(&x, &x), &x);
        let rhs = field.add(&field.add(&x3, &field.mul(&a4, &x)), &a6);
        if field.is_zero(&rhs) {
            count += 1;
        } else if field.is_square(&rhs) {
            count += 2;
        }
    }
    Ok(count)
}

/// The characteristic polynomial x^2 - a*x + q of the q-power Frobenius,
/// with a = q + 1 - #E(F_q). The Hasse bound |a| <= 2*sqrt(q) is asserted;
/// violating it would mean the count is wrong.
pub fn char_poly_frobenius(curve: &CurveParams, q: u64) -> Result<IntPoly> {
    let n = count_points(curve, q)?;
    let a = q as i64 + 1 - n as i64;
    if (a as i128) * (a as i128) > 4 * q as i128 {
        return Err(Error::Validation(format!(
            "trace {a} violates the Hasse bound for q = {q}"
        )));
    }
    Ok(IntPoly::quadratic(a, q as i64))
}

/// Evaluates h(F) at a curve point: sum of c_i * F^i(P).
pub fn apply_relation(h: &IntPoly, op: &FrobeniusOp, point: &ECPoint) -> Result<ECPoint> {
    let mut acc = ECPoint::infinity(*point.curve());
    let mut frob_image = point.clone();
    for (i, c) in h.coeffs().iter().enumerate() {
        if i > 0 {
            frob_image = op.apply_ec(&frob_image, 1)?;
        }
        let c = c
            .to_i64()
            .ok_or_else(|| Error::ResourceLimit("relation coefficient exceeds i64".into()))?;
        if c != 0 {
            acc = acc.add(&frob_image.scalar_mul(c)?)?;
        }
    }
    Ok(acc)
}

/// True iff h(F)(P) = O for every sample point.
pub fn verify_relation(h: &IntPoly, op: &FrobeniusOp, samples: &[ECPoint]) -> Result<bool> {
    for point in samples {
        if !apply_relation(h, op, point)?.is_infinity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks h(F) = 0 on the generic point (t, s) of the curve. Two morphisms
/// that agree on the generic point agree everywhere, so a pass here proves
/// the relation as an identity of endomorphisms, not just on samples.
pub fn relation_holds_generically(curve: &CurveParams, h: &IntPoly, q: u64) -> Result<bool> {
    let p = curve.prime();
    validate_prime_power(q, p)?;
    let tower = crate::field::tower::TowerField::new(curve.generic_point_modulus())?;
    let generic = ECPoint::generic(*curve, &tower)?;
    let op = FrobeniusOp::new(q, p)?;
    Ok(apply_relation(h, &op, &generic)?.is_infinity())
}

/// Sample points for relation checks: F_q-rational points, small multiples
/// of the base point, and small combinations with its first Frobenius image.
/// Coordinate degrees stay below ~200 so evaluating h(F) at every sample is
/// a few milliseconds; deterministic by construction.
pub fn relation_samples(
    curve: &CurveParams,
    base: &ECPoint,
    op: &FrobeniusOp,
    want: usize,
) -> Result<Vec<ECPoint>> {
    let mut samples = Vec::with_capacity(want);
    // Rational points over F_p lifted into the tower as constants.
    let p = curve.prime();
    let tower = match base.xy() {
        Some((x, _)) => x.field().clone(),
        None => return Err(Error::InvalidArgument("base point is the identity".into())),
    };
    for xv in 0..p {
        if samples.len() >= want / 3 {
            break;
        }
        let x = crate::field::tower::TowerElem::constant(xv as i64, tower.clone());
        let rhs = curve.rhs(&x);
        for yv in 0..p {
            let y = crate::field::tower::TowerElem::constant(yv as i64, tower.clone());
            if y.mul(&y) == rhs {
                samples.push(ECPoint::affine(x.clone(), y, *curve)?);
                break;
            }
        }
    }
    // Small multiples k*P.
    let mut k = 1;
    while samples.len() < 2 * want / 3 && k <= 5 {
        samples.push(base.scalar_mul(k)?);
        k += 1;
    }
    // Frobenius images: coordinate power maps. Image degree grows as
    // q^j * k^2, and evaluating h(F) costs roughly its square, so the
    // image set stays small where j and k are both large.
    let image_shapes = [(1u32, 1i64), (1, 2), (1, 3), (2, 1), (3, 1)];
    for (j, k) in image_shapes {
        if samples.len() >= want - 6 {
            break;
        }
        samples.push(op.apply_ec(&base.scalar_mul(k)?, j)?);
    }
    // Mixed combinations k*P + j*F(P); dense coordinates, kept small.
    let f_image = op.apply_ec(base, 1)?;
    'combo: for j in [1i64, -1, 2] {
        for k in 1i64..=3 {
            if samples.len() >= want {
                break 'combo;
            }
            let combo = base.scalar_mul(k)?.add(&f_image.scalar_mul(j)?)?;
            samples.push(combo);
        }
    }
    samples.truncate(want);
    if samples.len() < want {
        return Err(Error::InvalidArgument(format!(
            "only {} distinct sample points available",
            samples.len()
        )));
    }
    Ok(samples)
}

/// The least common multiple of the torus relation (x - q) and the
/// characteristic polynomials of the elliptic factors: a monic h with
/// h(F) = 0 on the whole product. Distinct monic irreducible factors are
/// coprime, so the lcm is the product of the deduplicated factor list.
pub fn minimal_poly_on_group(
    descriptor: &crate::group::descriptor::GroupDescriptor,
) -> Result<IntPoly> {
    let q = descriptor.q();
    let mut factors: Vec<IntPoly> = Vec::new();
    if descriptor.torus_rank() > 0 {
        // The q-power map is multiplication by q on the torus.
        factors.push(IntPoly::linear(q as i64));
    }
    for curve in descriptor.curves() {
        let cp = char_poly_frobenius(curve, q)?;
        if !factors.contains(&cp) {
            factors.push(cp);
        }
    }
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Validation("empty ambient group".into()))?;
    Ok(iter.fold(first, |acc, f| acc.mul(&f)))
}
