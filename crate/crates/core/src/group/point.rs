//! Torus and product points.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::tower::TowerElem;
use crate::group::curve::ECPoint;
use crate::group::descriptor::GroupDescriptor;

/// A point of G_m^N: a vector of invertible tower elements.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<TowerElem>,
}

impl TorusPoint {
    pub fn new(coords: Vec<TowerElem>) -> Result<Self> {
        if coords.iter().any(TowerElem::is_zero) {
            return Err(Error::Validation("torus coordinate is zero".into()));
        }
        Ok(TorusPoint { coords })
    }

    pub fn identity_of_rank(rank: usize, field: &Arc<crate::field::tower::TowerField>) -> Self {
        TorusPoint {
            coords: (0..rank).map(|_| TowerElem::one(field.clone())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[TowerElem] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(TowerElem::is_one)
    }

    /// Componentwise product (the torus group law).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(TorusPoint { coords })
    }

    pub fn inv(&self) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(TowerElem::inv)
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { coords })
    }

    /// Componentwise integer power (scalar action in additive notation).
    pub fn pow_i64(&self, n: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.pow_i64(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { coords })
    }

    pub fn qth_power(&self, q: u64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.qth_power(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { coords })
    }

    pub fn degree_proxy(&self) -> u128 {
        self.coords
            .iter()
            .map(TowerElem::degree_proxy)
            .max()
            .unwrap_or(0)
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of the ambient product G = G_m^N x E_1 x ... x E_e.
#[derive(Clone)]
pub struct ProductPoint {
    torus: TorusPoint,
    elliptic: Vec<ECPoint>,
    group: Arc<GroupDescriptor>,
}

impl ProductPoint {
    pub fn new(
        torus: TorusPoint,
        elliptic: Vec<ECPoint>,
        group: Arc<GroupDescriptor>,
    ) -> Result<Self> {
        if torus.rank() != group.torus_rank() {
            return Err(Error::DimensionMismatch {
                expected: group.torus_rank(),
                got: torus.rank(),
            });
        }
        if elliptic.len() != group.elliptic_count() {
            return Err(Error::DimensionMismatch {
                expected: group.elliptic_count(),
                got: elliptic.len(),
            });
        }
        for (pt, curve) in elliptic.iter().zip(group.curves()) {
            if pt.curve() != curve {
                return Err(Error::MixedCurve);
            }
        }
        Ok(ProductPoint {
            torus,
            elliptic,
            group,
        })
    }

    pub fn identity(group: Arc<GroupDescriptor>) -> Self {
        let torus = TorusPoint::identity_of_rank(group.torus_rank(), group.tower());
        let elliptic = group
            .curves()
            .iter()
            .map(|c| ECPoint::infinity(*c))
            .collect();
        ProductPoint {
            torus,
            elliptic,
            group,
        }
    }

    pub fn torus(&self) -> &TorusPoint {
        &self.torus
    }

    pub fn elliptic(&self) -> &[ECPoint] {
        &self.elliptic
    }

    pub fn group(&self) -> &Arc<GroupDescriptor> {
        &self.group
    }

    pub fn is_identity(&self) -> bool {
        self.torus.is_identity() && self.elliptic.iter().all(ECPoint::is_infinity)
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Componentwise group law: multiplicative on the torus block, additive
    /// on the elliptic blocks.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let torus = self.torus.mul(&other.torus)?;
        let elliptic = self
            .elliptic
            .iter()
            .zip(&other.elliptic)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductPoint {
            torus,
            elliptic,
            group: self.group.clone(),
        })
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(ProductPoint {
            torus: self.torus.inv()?,
            elliptic: self.elliptic.iter().map(ECPoint::neg).collect(),
            group: self.group.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scalar_mul(&self, n: i64) -> Result<Self> {
        let torus = self.torus.pow_i64(n)?;
        let elliptic = self
            .elliptic
            .iter()
            .map(|p| p.scalar_mul(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductPoint {
            torus,
            elliptic,
            group: self.group.clone(),
        })
    }

    pub fn qth_power(&self, q: u64) -> Result<Self> {
        let torus = self.torus.qth_power(q)?;
        let elliptic = self
            .elliptic
            .iter()
            .map(|p| p.frobenius(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductPoint {
            torus,
            elliptic,
            group: self.group.clone(),
        })
    }

    pub fn degree_proxy(&self) -> u128 {
        self.torus.degree_proxy().max(
            self.elliptic
                .iter()
                .map(ECPoint::degree_proxy)
                .max()
                .unwrap_or(0),
        )
    }
}

impl PartialEq for ProductPoint {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.torus == other.torus && self.elliptic == other.elliptic
    }
}
impl Eq for ProductPoint {}

impl std::fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for c in self.torus.coords() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        for e in &self.elliptic {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, ")")
    }
}

impl std::fmt::Debug for ProductPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Poly;
    use crate::field::ratfunc::RatFunc;
    use crate::field::tower::TowerField;
    use crate::group::curve::CurveParams;

    fn example_group() -> Arc<GroupDescriptor> {
        let tower = TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap();
        let curve = CurveParams::from_i64(0, 1, 5).unwrap();
        GroupDescriptor::new(5, 2, vec![curve], tower).unwrap()
    }

    fn base_point(g: &Arc<GroupDescriptor>) -> ProductPoint {
        let tw = g.tower().clone();
        let torus = TorusPoint::new(vec![
            TowerElem::t(tw.clone()),
            TowerElem::from_poly(Poly::from_dense(&[1, 1], 5), tw.clone()),
        ])
        .unwrap();
        let p = ECPoint::generic(g.curves()[0], &tw).unwrap();
        ProductPoint::new(torus, vec![p], g.clone()).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let g = example_group();
        let q = base_point(&g);
        let id = ProductPoint::identity(g.clone());
        assert_eq!(q.add(&id).unwrap(), q);
        assert!(q.add(&q.neg().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn componentwise_doubling() {
        let g = example_group();
        let q = base_point(&g);
        let doubled = q.add(&q).unwrap();
        // torus block: (t^2, (t+1)^2)
        let tw = g.tower().clone();
        let t = TowerElem::t(tw.clone());
        assert_eq!(doubled.torus().coords()[0], t.mul(&t));
        let t1 = TowerElem::from_poly(Poly::from_dense(&[1, 1], 5), tw);
        assert_eq!(doubled.torus().coords()[1], t1.mul(&t1));
        // elliptic block: 2P
        assert_eq!(
            doubled.elliptic()[0],
            q.elliptic()[0].scalar_mul(2).unwrap()
        );
        assert_eq!(doubled, q.scalar_mul(2).unwrap());
    }

    #[test]
    fn zero_torus_coordinate_rejected() {
        let g = example_group();
        let tw = g.tower().clone();
        assert!(TorusPoint::new(vec![TowerElem::zero(tw.clone()), TowerElem::one(tw)]).is_err());
    }

    #[test]
    fn group_mismatch_detected() {
        let g1 = example_group();
        let tower = TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap();
        let g2 = GroupDescriptor::new(5, 1, vec![], tower).unwrap();
        let p1 = ProductPoint::identity(g1);
        let p2 = ProductPoint::identity(g2);
        assert!(matches!(p1.add(&p2), Err(Error::GroupMismatch)));
    }

    #[test]
    fn frobenius_on_product() {
        let g = example_group();
        let q = base_point(&g);
        let fq = q.qth_power(5).unwrap();
        // (t, t+1) -> (t^5, t^5 + 1): freshman's dream in char 5.
        let tw = g.tower().clone();
        let t5 = TowerElem::from_rat(RatFunc::t(5).pow_i64(5).unwrap(), tw.clone());
        assert_eq!(fq.torus().coords()[0], t5);
        let t5p1 = TowerElem::from_poly(Poly::from_dense(&[1, 0, 0, 0, 0, 1], 5), tw);
        assert_eq!(fq.torus().coords()[1], t5p1);
    }
}
