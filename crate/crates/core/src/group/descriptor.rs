//! Ambient group descriptors for products G = G_m^N x E_1 x ... x E_e.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::tower::{validate_prime_power, TowerField};
use crate::group::curve::CurveParams;

/// Structural description of one ambient group, shared by all of its points.
#[derive(Debug)]
pub struct GroupDescriptor {
    p: u64,
    q: u64,
    torus_rank: usize,
    curves: Vec<CurveParams>,
    tower: Arc<TowerField>,
}

impl GroupDescriptor {
    pub fn new(
        q: u64,
        torus_rank: usize,
        curves: Vec<CurveParams>,
        tower: Arc<TowerField>,
    ) -> Result<Arc<Self>> {
        let p = tower.prime();
        validate_prime_power(q, p)?;
        for c in &curves {
            if c.prime() != p {
                return Err(Error::Validation(
                    "curve prime differs from tower prime".into(),
                ));
            }
        }
        if torus_rank == 0 && curves.is_empty() {
            return Err(Error::Validation("empty ambient group".into()));
        }
        Ok(Arc::new(GroupDescriptor {
            p,
            q,
            torus_rank,
            curves,
            tower,
        }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The field of definition F_q of the scenario Frobenius.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn curves(&self) -> &[CurveParams] {
        &self.curves
    }

    pub fn elliptic_count(&self) -> usize {
        self.curves.len()
    }

    /// Dimension as a variety: N + number of elliptic factors.
    pub fn dimension(&self) -> usize {
        self.torus_rank + self.curves.len()
    }

    pub fn tower(&self) -> &Arc<TowerField> {
        &self.tower
    }
}

impl PartialEq for GroupDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.q == other.q
            && self.torus_rank == other.torus_rank
            && self.curves == other.curves
            && self.tower == other.tower
    }
}
impl Eq for GroupDescriptor {}
