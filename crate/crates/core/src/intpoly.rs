//! Monic integer polynomials, used for relations h with h(F) = 0 and for
//! the companion recurrence that rewrites F^n in the basis 1, F, ..., F^(m-1).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A monic polynomial with integer coefficients, degree >= 1.
/// Coefficients are stored lowest-first; the leading 1 is included.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument(
                "relation polynomial must have degree >= 1".into(),
            ));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidArgument(
                "relation polynomial must be monic".into(),
            ));
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x - q
    pub fn linear(q: i64) -> Self {
        IntPoly::from_i64(&[-q, 1]).unwrap()
    }

    /// x^2 - a*x + q
    pub fn quadratic(a: i64, q: i64) -> Self {
        IntPoly::from_i64(&[q, -a, 1]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff_i64(&self, i: usize) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.coeffs.get(i).and_then(|c| c.to_i64())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly { coeffs: out }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficient vector of x^n reduced modulo this polynomial: the exact
    /// companion-matrix action, as length-m integer vectors (m = degree).
    pub fn power_mod(&self, n: u64) -> Vec<BigInt> {
        let m = self.degree();
        let mut vec = vec![BigInt::zero(); m];
        vec[0] = BigInt::one();
        for _ in 0..n {
            vec = self.companion_step(&vec);
        }
        vec
    }

    /// One companion step: multiply by x and reduce, i.e.
    /// (a_0, ..., a_{m-1}) -> (0, a_0, ..., a_{m-2}) - a_{m-1} * (c_0, ..., c_{m-1}).
    pub fn companion_step(&self, vec: &[BigInt]) -> Vec<BigInt> {
        let m = self.degree();
        assert_eq!(vec.len(), m, "vector length must equal degree");
        let top = vec[m - 1].clone();
        let mut out = vec![BigInt::zero(); m];
        out[1..m].clone_from_slice(&vec[..m - 1]);
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            *slot -= &top * c;
        }
        out
    }

    /// Largest absolute coefficient value of x^n mod h; cost proxy for
    /// deciding whether a pointwise check is feasible on tower coordinates.
    pub fn power_mod_magnitude(&self, n: u64) -> BigInt {
        self.power_mod(n)
            .into_iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::fmt::Display for IntPoly {
    /// Lowest-first coefficient list, e.g. `[5, -2, 1]`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_monic() {
        assert!(IntPoly::from_i64(&[1, 2]).is_err());
        assert!(IntPoly::from_i64(&[7]).is_err());
        assert!(IntPoly::from_i64(&[5, -2, 1]).is_ok());
    }

    #[test]
    fn power_mod_matches_hand_reduction() {
        // h = x^2 - 2x + 5: x^2 = 2x - 5, x^3 = 2x^2 - 5x = -x - 10.
        let h = IntPoly::quadratic(2, 5);
        assert_eq!(h.power_mod(2), vec![BigInt::from(-5), BigInt::from(2)]);
        assert_eq!(h.power_mod(3), vec![BigInt::from(-10), BigInt::from(-1)]);
    }

    #[test]
    fn basis_vectors_below_degree() {
        let h = IntPoly::from_i64(&[1, 0, 2, 1]).unwrap();
        assert_eq!(
            h.power_mod(0),
            vec![BigInt::one(), BigInt::zero(), BigInt::zero()]
        );
        assert_eq!(
            h.power_mod(1),
            vec![BigInt::zero(), BigInt::one(), BigInt::zero()]
        );
        assert_eq!(
            h.power_mod(2),
            vec![BigInt::zero(), BigInt::zero(), BigInt::one()]
        );
    }

    #[test]
    fn linear_relation_gives_scalar_powers() {
        // h = x - 5: x^n = 5^n.
        let h = IntPoly::linear(5);
        assert_eq!(h.power_mod(4), vec![BigInt::from(625)]);
    }

    #[test]
    fn display_lowest_first() {
        let h = IntPoly::quadratic(2, 5);
        assert_eq!(h.to_string(), "[5, -2, 1]");
    }

    #[test]
    fn product_of_relations() {
        // (x - 5)(x^2 - 2x + 5) = x^3 - 7x^2 + 15x - 25
        let h = IntPoly::linear(5).mul(&IntPoly::quadratic(2, 5));
        assert_eq!(
            h.coeffs(),
            &[
                BigInt::from(-25),
                BigInt::from(15),
                BigInt::from(-7),
                BigInt::from(1)
            ]
        );
    }
}
