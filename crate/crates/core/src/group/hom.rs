//! Homomorphisms between ambient products, restricted to monomial maps on
//! torus blocks and u*id + v*F block maps on elliptic blocks. This covers
//! every construction in scope (coordinate projections, Frobenius-twisted
//! block maps); general isogenies are out.
//!
//! Surjectivity is meant geometrically, i.e. over the algebraic closure: a
//! monomial map with full-rank exponent matrix is surjective on closed
//! points even though its restriction to tower-rational points need not be.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::tower::TowerElem;
use crate::group::curve::ECPoint;
use crate::group::descriptor::GroupDescriptor;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::linalg::{rank, IntMat};

/// Action on one elliptic factor: u * id + v * F.
pub type FrobEntry = (i64, i64);

#[derive(Clone)]
pub struct GroupHom {
    /// target_rank x source_rank exponent matrix of the monomial map.
    torus_matrix: Vec<Vec<i64>>,
    /// target_count x source_count matrix of u*id + v*F entries.
    elliptic_matrix: Vec<Vec<FrobEntry>>,
    source: Arc<GroupDescriptor>,
    target: Arc<GroupDescriptor>,
    surjective: bool,
}

impl GroupHom {
    /// Builds a homomorphism; when `claim_surjective` is set the rank
    /// conditions are verified and construction fails if they do not hold.
    pub fn new(
        torus_matrix: Vec<Vec<i64>>,
        elliptic_matrix: Vec<Vec<FrobEntry>>,
        source: Arc<GroupDescriptor>,
        target: Arc<GroupDescriptor>,
        claim_surjective: bool,
    ) -> Result<Self> {
        if torus_matrix.len() != target.torus_rank()
            || torus_matrix.iter().any(|r| r.len() != source.torus_rank())
        {
            return Err(Error::DimensionMismatch {
                expected: target.torus_rank() * source.torus_rank(),
                got: torus_matrix.iter().map(Vec::len).sum(),
            });
        }
        if elliptic_matrix.len() != target.elliptic_count()
            || elliptic_matrix
                .iter()
                .any(|r| r.len() != source.elliptic_count())
        {
            return Err(Error::DimensionMismatch {
                expected: target.elliptic_count() * source.elliptic_count(),
                got: elliptic_matrix.iter().map(Vec::len).sum(),
            });
        }
        if source.tower() != target.tower() {
            return Err(Error::ModulusMismatch);
        }
        let hom = GroupHom {
            torus_matrix,
            elliptic_matrix,
            source,
            target,
            surjective: false,
        };
        if !hom.elliptic_matrix.is_empty() && !hom.elliptic_matrix[0].is_empty() {
            hom.uniform_curve()?;
        }
        if claim_surjective {
            if !hom.rank_conditions_hold()? {
                return Err(Error::Validation(
                    "surjectivity claim fails the rank conditions".into(),
                ));
            }
            return Ok(GroupHom {
                surjective: true,
                ..hom
            });
        }
        Ok(hom)
    }

    /// Projection of a product onto a sub-product: keep the listed torus
    /// coordinates and the listed elliptic factors.
    pub fn projection(
        source: Arc<GroupDescriptor>,
        torus_keep: &[usize],
        elliptic_keep: &[usize],
    ) -> Result<Self> {
        let curves = elliptic_keep
            .iter()
            .map(|&i| {
                source
                    .curves()
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("no elliptic factor {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let target =
            GroupDescriptor::new(source.q(), torus_keep.len(), curves, source.tower().clone())?;
        let torus_matrix = torus_keep
            .iter()
            .map(|&i| {
                let mut row = vec![0i64; source.torus_rank()];
                if i >= source.torus_rank() {
                    return Err(Error::InvalidArgument(format!("no torus coordinate {i}")));
                }
                row[i] = 1;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let elliptic_matrix = elliptic_keep
            .iter()
            .map(|&i| {
                let mut row = vec![(0i64, 0i64); source.elliptic_count()];
                row[i] = (1, 0);
                row
            })
            .collect();
        GroupHom::new(torus_matrix, elliptic_matrix, source, target, true)
    }

    pub fn source(&self) -> &Arc<GroupDescriptor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GroupDescriptor> {
        &self.target
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn torus_matrix(&self) -> &[Vec<i64>] {
        &self.torus_matrix
    }

    pub fn elliptic_matrix(&self) -> &[Vec<FrobEntry>] {
        &self.elliptic_matrix
    }

    /// The single curve type shared by all elliptic factors in play.
    fn uniform_curve(&self) -> Result<crate::group::curve::CurveParams> {
        let mut all = self.source.curves().iter().chain(self.target.curves());
        let first = *all
            .next()
            .ok_or_else(|| Error::UnsupportedShape("no elliptic factors".into()))?;
        if all.any(|c| *c != first) {
            return Err(Error::UnsupportedShape(
                "elliptic block maps require one shared curve type".into(),
            ));
        }
        Ok(first)
    }

    /// Applies the homomorphism.
    pub fn apply(&self, point: &ProductPoint) -> Result<ProductPoint> {
        if point.group() != &self.source {
            return Err(Error::GroupMismatch);
        }
        let tower = self.source.tower().clone();
        let mut torus_coords = Vec::with_capacity(self.target.torus_rank());
        for row in &self.torus_matrix {
            let mut acc = TowerElem::one(tower.clone());
            for (coord, &e) in point.torus().coords().iter().zip(row) {
                if e != 0 {
                    acc = acc.mul(&coord.pow_i64(e)?);
                }
            }
            torus_coords.push(acc);
        }
        let q = self.source.q();
        let mut elliptic = Vec::with_capacity(self.target.elliptic_count());
        for (row, curve) in self.elliptic_matrix.iter().zip(self.target.curves()) {
            let mut acc = ECPoint::infinity(*curve);
            for (pt, &(u, v)) in point.elliptic().iter().zip(row) {
                if u != 0 {
                    acc = acc.add(&pt.scalar_mul(u)?)?;
                }
                if v != 0 {
                    acc = acc.add(&pt.frobenius(q)?.scalar_mul(v)?)?;
                }
            }
            elliptic.push(acc);
        }
        ProductPoint::new(
            TorusPoint::new(torus_coords)?,
            elliptic,
            self.target.clone(),
        )
    }

    fn torus_rank_int(&self) -> usize {
        if self.torus_matrix.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i128>> = self
            .torus_matrix
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        rank(&IntMat::from_rows(&rows))
    }

    /// Rank of the elliptic block over the endomorphism algebra, computed by
    /// restriction of scalars: each u*id + v*F entry becomes the 2x2 block
    /// u*I + v*C with C the companion matrix of the curve's Frobenius
    /// relation, and the rank over Q(F) is half the rank of the blow-up.
    fn elliptic_rank(&self) -> Result<usize> {
        if self.elliptic_matrix.is_empty() || self.elliptic_matrix.iter().all(|r| r.is_empty()) {
            return Ok(0);
        }
        let curve = self.uniform_curve()?;
        let h = crate::frob::char_poly_frobenius(&curve, self.source.q())?;
        let c0 = h.coeff_i64(0).unwrap();
        let c1 = h.coeff_i64(1).unwrap();
        let t_rows = self.elliptic_matrix.len();
        let s_cols = self.elliptic_matrix[0].len();
        let mut blown = IntMat::zero(2 * t_rows, 2 * s_cols);
        for (i, row) in self.elliptic_matrix.iter().enumerate() {
            for (j, &(u, v)) in row.iter().enumerate() {
                // u*I + v*C with C = [[0, -c0], [1, -c1]] acting on (1, F).
                blown[(2 * i, 2 * j)] = u as i128;
                blown[(2 * i, 2 * j + 1)] = -(v as i128) * c0 as i128;
                blown[(2 * i + 1, 2 * j)] = v as i128;
                blown[(2 * i + 1, 2 * j + 1)] = u as i128 - (v as i128) * c1 as i128;
            }
        }
        let r = rank(&blown);
        debug_assert_eq!(r % 2, 0, "blow-up rank must be even over a quadratic field");
        Ok(r / 2)
    }

    /// Dimension of the kernel as an algebraic group: torus contribution
    /// N_source - rank(torus matrix), plus one per elliptic source factor
    /// beyond the rank of the elliptic block.
    pub fn kernel_dim(&self) -> Result<usize> {
        let torus_part = self.source.torus_rank() - self.torus_rank_int();
        let elliptic_part = self.source.elliptic_count() - self.elliptic_rank()?;
        Ok(torus_part + elliptic_part)
    }

    fn rank_conditions_hold(&self) -> Result<bool> {
        Ok(self.torus_rank_int() == self.target.torus_rank()
            && self.elliptic_rank()? == self.target.elliptic_count())
    }
}
