//! Finite descriptions of groupless, generalized and pseudo-generalized
//! F-sets, with normalization, enumeration and bounded membership.
//!
//! A groupless F-set enumerates points base + sum_i F^(k_i n_i)(alpha_i) as
//! the n_i range over the naturals (n_i = 0 included). Membership verdicts
//! distinguish certified absence (a degree-growth argument rules out every
//! exponent tuple) from bounded absence (nothing found below the cap).

use crate::error::{Error, Result};
use crate::frob::FrobeniusOp;
use crate::group::descriptor::GroupDescriptor;
use crate::group::hom::GroupHom;
use crate::group::point::ProductPoint;
use crate::zfmod::{CoeffVector, Subgroup};
use std::sync::Arc;

/// base + sum of F-orbits with per-summand strides.
#[derive(Clone)]
pub struct GrouplessFSet {
    base: ProductPoint,
    summands: Vec<(ProductPoint, u32)>,
    frob: FrobeniusOp,
}

/// Outcome of a membership query against an enumerable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    Found(Vec<u32>),
    /// No exponent tuple can produce the point, for any n, proven by the
    /// degree-growth argument.
    CertifiedAbsent,
    /// Nothing below the cap; says nothing about larger exponents.
    AbsentUpTo(u32),
}

impl Membership {
    pub fn found(&self) -> Option<&[u32]> {
        match self {
            Membership::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_certified_absent(&self) -> bool {
        matches!(self, Membership::CertifiedAbsent)
    }
}

impl GrouplessFSet {
    pub fn new(
        base: ProductPoint,
        summands: Vec<(ProductPoint, u32)>,
        frob: FrobeniusOp,
    ) -> Result<Self> {
        for (point, stride) in &summands {
            if point.group() != base.group() {
                return Err(Error::GroupMismatch);
            }
            if *stride == 0 {
                return Err(Error::Validation("summand stride must be >= 1".into()));
            }
        }
        Ok(GrouplessFSet {
            base,
            summands,
            frob,
        })
    }

    /// The singleton {point}: r = 0.
    pub fn singleton(point: ProductPoint, frob: FrobeniusOp) -> Self {
        GrouplessFSet {
            base: point,
            summands: Vec::new(),
            frob,
        }
    }

    pub fn base(&self) -> &ProductPoint {
        &self.base
    }

    pub fn summands(&self) -> &[(ProductPoint, u32)] {
        &self.summands
    }

    pub fn frob(&self) -> &FrobeniusOp {
        &self.frob
    }

    pub fn group(&self) -> &Arc<GroupDescriptor> {
        self.base.group()
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// The point at one exponent tuple.
    pub fn point_at(&self, tuple: &[u32]) -> Result<ProductPoint> {
        if tuple.len() != self.summands.len() {
            return Err(Error::DimensionMismatch {
                expected: self.summands.len(),
                got: tuple.len(),
            });
        }
        let mut acc = self.base.clone();
        for ((alpha, stride), &n) in self.summands.iter().zip(tuple) {
            let image = self.frob.apply(alpha, stride * n)?;
            acc = acc.add(&image)?;
        }
        Ok(acc)
    }

    /// All points with every exponent <= cap, tuples in lexicographic order.
    /// r = 0 yields the singleton base.
    pub fn enumerate(&self, cap: u32) -> Result<Vec<(Vec<u32>, ProductPoint)>> {
        let r = self.summands.len();
        let mut out = Vec::new();
        let mut tuple = vec![0u32; r];
        loop {
            out.push((tuple.clone(), self.point_at(&tuple)?));
            // Odometer: rightmost coordinate fastest.
            let mut done = true;
            for slot in tuple.iter_mut().rev() {
                if *slot < cap {
                    *slot += 1;
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                return Ok(out);
            }
        }
    }

    /// Splits into sets with one uniform stride k = lcm(k_i): one output per
    /// residue tuple (r_i), with summands F^(k_i r_i)(alpha_i) and stride k.
    /// The union of the outputs enumerates exactly the original point set.
    pub fn normalize_common_k(&self) -> Result<Vec<GrouplessFSet>> {
        Ok(self
            .normalize_common_k_with_residues()?
            .into_iter()
            .map(|(_, s)| s)
            .collect())
    }

    /// As [`normalize_common_k`](Self::normalize_common_k), keeping each
    /// output's residue tuple so callers can recover the raw Frobenius
    /// exponent k_i * r_i + k * n of every enumerated summand.
    pub fn normalize_common_k_with_residues(&self) -> Result<Vec<(Vec<u32>, GrouplessFSet)>> {
        if self.summands.is_empty() {
            return Ok(vec![(Vec::new(), self.clone())]);
        }
        let k = self.summands.iter().map(|&(_, s)| s as u64).fold(1u64, lcm);
        if k > u32::MAX as u64 {
            return Err(Error::ResourceLimit("stride lcm overflows".into()));
        }
        let ratios: Vec<u32> = self
            .summands
            .iter()
            .map(|&(_, s)| (k / s as u64) as u32)
            .collect();
        let mut out = Vec::new();
        let mut residues = vec![0u32; self.summands.len()];
        loop {
            let summands = self
                .summands
                .iter()
                .zip(&residues)
                .map(|((alpha, stride), &r)| Ok((self.frob.apply(alpha, stride * r)?, k as u32)))
                .collect::<Result<Vec<_>>>()?;
            out.push((
                residues.clone(),
                GrouplessFSet {
                    base: self.base.clone(),
                    summands,
                    frob: self.frob,
                },
            ));
            let mut done = true;
            for (slot, &ratio) in residues.iter_mut().zip(&ratios).rev() {
                if *slot + 1 < ratio {
                    *slot += 1;
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                return Ok(out);
            }
        }
    }

    /// The torus coordinate position that certifies degree growth: every
    /// summand polynomial and nonconstant there, and the base polynomial.
    /// Degrees of polynomial products add exactly, so the point degree is
    /// strictly increasing in every exponent.
    fn growth_coordinate(&self) -> Option<usize> {
        let n = self.group().torus_rank();
        'coord: for j in 0..n {
            let base_c = &self.base.torus().coords()[j];
            if !base_c.is_rational() || !base_c.rat_part().is_polynomial() {
                continue;
            }
            for (alpha, _) in &self.summands {
                let c = &alpha.torus().coords()[j];
                if !c.is_rational() || !c.rat_part().is_polynomial() {
                    continue 'coord;
                }
                if c.rat_part().num().degree().unwrap_or(0) == 0 {
                    continue 'coord;
                }
            }
            return Some(j);
        }
        None
    }

    /// Membership with cap; degree pruning certifies absence when available.
    pub fn membership(&self, x: &ProductPoint, cap: u32) -> Result<Membership> {
        if x.group() != self.group() {
            return Err(Error::GroupMismatch);
        }
        if self.summands.is_empty() {
            return Ok(if x == &self.base {
                Membership::Found(vec![])
            } else {
                Membership::CertifiedAbsent
            });
        }
        match self.growth_coordinate() {
            Some(j) => self.membership_with_growth(x, cap, j),
            None => self.membership_plain(x, cap),
        }
    }

    fn membership_plain(&self, x: &ProductPoint, cap: u32) -> Result<Membership> {
        for (tuple, point) in self.enumerate(cap)? {
            if &point == x {
                return Ok(Membership::Found(tuple));
            }
        }
        Ok(Membership::AbsentUpTo(cap))
    }

    fn membership_with_growth(&self, x: &ProductPoint, cap: u32, j: usize) -> Result<Membership> {
        let q = self.frob.q() as u128;
        // Candidate points carry a polynomial j-th coordinate; if the target
        // does not, nothing can match, for any exponents.
        let xc = &x.torus().coords()[j];
        if !xc.is_rational() || !xc.rat_part().is_polynomial() {
            return Ok(Membership::CertifiedAbsent);
        }
        let target = xc.rat_part().num().degree().unwrap_or(0);
        let base_deg = self.base.torus().coords()[j]
            .rat_part()
            .num()
            .degree()
            .unwrap_or(0);
        let degs: Vec<u128> = self
            .summands
            .iter()
            .map(|(a, _)| a.torus().coords()[j].rat_part().num().degree().unwrap())
            .collect();
        let strides: Vec<u32> = self.summands.iter().map(|&(_, s)| s).collect();

        // deg(point(tuple)) = base_deg + sum_i degs[i] * q^(strides[i]*n_i),
        // exactly: polynomial degrees are additive under products.
        let mut capped = false;
        let mut tuple = vec![0u32; self.summands.len()];
        let found = self.scan_growth(
            x,
            cap,
            target,
            base_deg,
            &degs,
            &strides,
            q,
            &mut tuple,
            0,
            &mut capped,
        )?;
        if let Some(t) = found {
            return Ok(Membership::Found(t));
        }
        Ok(if capped {
            Membership::AbsentUpTo(cap)
        } else {
            Membership::CertifiedAbsent
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn scan_growth(
        &self,
        x: &ProductPoint,
        cap: u32,
        target: u128,
        partial: u128,
        degs: &[u128],
        strides: &[u32],
        q: u128,
        tuple: &mut Vec<u32>,
        index: usize,
        capped: &mut bool,
    ) -> Result<Option<Vec<u32>>> {
        if index == degs.len() {
            if partial == target {
                let point = self.point_at(tuple)?;
                if &point == x {
                    return Ok(Some(tuple.clone()));
                }
            }
            return Ok(None);
        }
        // Remaining summands contribute at least their degree at n = 0.
        let min_rest: u128 = degs[index + 1..].iter().sum();
        for n in 0..=cap {
            let power = q.checked_pow(strides[index] * n);
            let contribution = power.and_then(|p| degs[index].checked_mul(p));
            let Some(c) = contribution else {
                // Degree overflowed u128: certainly beyond any target.
                return Ok(None);
            };
            let Some(total) = partial.checked_add(c) else {
                return Ok(None);
            };
            if total + min_rest > target {
                // Strictly increasing in n: every larger n overshoots too.
                return Ok(None);
            }
            tuple[index] = n;
            if let Some(hit) = self.scan_growth(
                x,
                cap,
                target,
                total,
                degs,
                strides,
                q,
                tuple,
                index + 1,
                capped,
            )? {
                return Ok(Some(hit));
            }
            if n == cap {
                // The next exponent would still be within the target degree,
                // but the cap stops the scan: absence is no longer certified.
                let next = q
                    .checked_pow(strides[index] * (n + 1))
                    .and_then(|p| degs[index].checked_mul(p))
                    .and_then(|c| partial.checked_add(c));
                if let Some(t) = next {
                    if t + min_rest <= target {
                        *capped = true;
                    }
                }
            }
        }
        tuple[index] = 0;
        Ok(None)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }
    a / gcd(a, b) * b
}

/// Preimage of a groupless F-set under a surjective homomorphism with
/// positive-dimensional kernel, restricted to a subgroup.
#[derive(Clone)]
pub struct GeneralizedFSet {
    hom: GroupHom,
    image_set: GrouplessFSet,
    group: Subgroup,
}

impl GeneralizedFSet {
    pub fn new(hom: GroupHom, image_set: GrouplessFSet, group: Subgroup) -> Result<Self> {
        if hom.kernel_dim()? == 0 {
            return Err(Error::Validation(
                "generalized F-set needs dim(ker) > 0".into(),
            ));
        }
        if !hom.is_surjective() {
            return Err(Error::Validation(
                "generalized F-set needs a verified surjective homomorphism".into(),
            ));
        }
        if image_set.group() != hom.target() {
            return Err(Error::GroupMismatch);
        }
        if group.ambient() != hom.source() {
            return Err(Error::GroupMismatch);
        }
        Ok(GeneralizedFSet {
            hom,
            image_set,
            group,
        })
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn image_set(&self) -> &GrouplessFSet {
        &self.image_set
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    /// The image of the subgroup under the homomorphism, generator-wise.
    pub fn image_subgroup(&self) -> Result<Subgroup> {
        let generators = self
            .group
            .generators()
            .iter()
            .map(|g| self.hom.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::new(generators, self.hom.target().clone())
    }

    /// All coefficient vectors c with max-norm <= bound whose image point
    /// lies in the image set (membership capped at `cap`). The certified
    /// flag reports whether every absence decision was certified.
    pub fn pullback_enumerate(&self, bound: i64, cap: u32, budget: u128) -> Result<PullbackResult> {
        let image_gamma = self.image_subgroup()?;
        let mut members = Vec::new();
        let mut all_certified = true;
        for coeffs in self.group.enumerate_coeffs(bound, budget)? {
            // pi(sum c_j gamma_j) = sum c_j pi(gamma_j): evaluate downstairs.
            let image_point = image_gamma.evaluate(&coeffs)?;
            match self.image_set.membership(&image_point, cap)? {
                Membership::Found(_) => members.push(coeffs),
                Membership::CertifiedAbsent => {}
                Membership::AbsentUpTo(_) => all_certified = false,
            }
        }
        Ok(PullbackResult {
            members,
            all_certified,
        })
    }

    /// Membership of one subgroup element, by its image.
    pub fn membership_of_coeffs(&self, coeffs: &CoeffVector, cap: u32) -> Result<Membership> {
        let image_gamma = self.image_subgroup()?;
        let image_point = image_gamma.evaluate(coeffs)?;
        self.image_set.membership(&image_point, cap)
    }
}

pub struct PullbackResult {
    pub members: Vec<CoeffVector>,
    pub all_certified: bool,
}

/// Translate of a generalized F-set taken on a subgroup Gamma_0, with the
/// translation point witnessed as a member of the enclosing group.
#[derive(Clone)]
pub struct PseudoGeneralizedFSet {
    offset: ProductPoint,
    offset_witness: CoeffVector,
    subgroup: Subgroup,
    hom: GroupHom,
    image_set: GrouplessFSet,
}

impl PseudoGeneralizedFSet {
    /// `offset_witness` must evaluate to `offset` in `enclosing`.
    pub fn new(
        offset: ProductPoint,
        enclosing: &Subgroup,
        offset_witness: CoeffVector,
        subgroup: Subgroup,
        hom: GroupHom,
        image_set: GrouplessFSet,
    ) -> Result<Self> {
        if enclosing.evaluate(&offset_witness)? != offset {
            return Err(Error::Validation(
                "offset witness does not evaluate to the offset point".into(),
            ));
        }
        if image_set.group() != hom.target() {
            return Err(Error::GroupMismatch);
        }
        if subgroup.ambient() != hom.source() {
            return Err(Error::GroupMismatch);
        }
        Ok(PseudoGeneralizedFSet {
            offset,
            offset_witness,
            subgroup,
            hom,
            image_set,
        })
    }

    pub fn offset(&self) -> &ProductPoint {
        &self.offset
    }

    pub fn offset_witness(&self) -> &CoeffVector {
        &self.offset_witness
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn image_set(&self) -> &GrouplessFSet {
        &self.image_set
    }

    /// Membership of one Gamma_0 element (by coefficients) in the pullback:
    /// tests whether its image lands in the image set.
    pub fn hom_membership(&self, coeffs: &CoeffVector, cap: u32) -> Result<Membership> {
        let image_gamma = Subgroup::new(
            self.subgroup
                .generators()
                .iter()
                .map(|g| self.hom.apply(g))
                .collect::<Result<Vec<_>>>()?,
            self.hom.target().clone(),
        )?;
        let image_point = image_gamma.evaluate(coeffs)?;
        self.image_set.membership(&image_point, cap)
    }

    /// Enumerates offset + (pi|_Gamma_0)^(-1)(S) over coefficients of
    /// Gamma_0 with max-norm <= bound.
    pub fn enumerate_points(
        &self,
        bound: i64,
        cap: u32,
        budget: u128,
    ) -> Result<(Vec<(CoeffVector, ProductPoint)>, bool)> {
        let image_gamma = Subgroup::new(
            self.subgroup
                .generators()
                .iter()
                .map(|g| self.hom.apply(g))
                .collect::<Result<Vec<_>>>()?,
            self.hom.target().clone(),
        )?;
        let mut out = Vec::new();
        let mut all_certified = true;
        for coeffs in self.subgroup.enumerate_coeffs(bound, budget)? {
            let image_point = image_gamma.evaluate(&coeffs)?;
            match self.image_set.membership(&image_point, cap)? {
                Membership::Found(_) => {
                    let point = self.offset.add(&self.subgroup.evaluate(&coeffs)?)?;
                    out.push((coeffs, point));
                }
                Membership::CertifiedAbsent => {}
                Membership::AbsentUpTo(_) => all_certified = false,
            }
        }
        Ok((out, all_certified))
    }
}

/// A finite union of the three set classes over one ambient group.
pub struct FSetUnion {
    pub groupless: Vec<GrouplessFSet>,
    pub generalized: Vec<GeneralizedFSet>,
    pub pseudo: Vec<PseudoGeneralizedFSet>,
}

impl FSetUnion {
    pub fn new(
        groupless: Vec<GrouplessFSet>,
        generalized: Vec<GeneralizedFSet>,
        pseudo: Vec<PseudoGeneralizedFSet>,
    ) -> Result<Self> {
        let mut ambient: Option<Arc<GroupDescriptor>> = None;
        {
            let mut check = |g: &Arc<GroupDescriptor>| -> Result<()> {
                match &ambient {
                    None => {
                        ambient = Some(g.clone());
                        Ok(())
                    }
                    Some(a) if a == g => Ok(()),
                    Some(_) => Err(Error::GroupMismatch),
                }
            };
            for s in &groupless {
                check(s.group())?;
            }
            for s in &generalized {
                check(s.group().ambient())?;
            }
            for s in &pseudo {
                check(s.subgroup().ambient())?;
            }
        }
        Ok(FSetUnion {
            groupless,
            generalized,
            pseudo,
        })
    }

    pub fn empty() -> Self {
        FSetUnion {
            groupless: Vec::new(),
            generalized: Vec::new(),
            pseudo: Vec::new(),
        }
    }

    pub fn set_count(&self) -> usize {
        self.groupless.len() + self.generalized.len() + self.pseudo.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Poly;
    use crate::field::tower::{TowerElem, TowerField};
    use crate::group::point::TorusPoint;

    fn torus_group(rank: usize) -> Arc<GroupDescriptor> {
        let tower = TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap();
        GroupDescriptor::new(5, rank, vec![], tower).unwrap()
    }

    fn point(g: &Arc<GroupDescriptor>, polys: &[&[i64]]) -> ProductPoint {
        let tower = g.tower().clone();
        let coords = polys
            .iter()
            .map(|c| TowerElem::from_poly(Poly::from_dense(c, 5), tower.clone()))
            .collect();
        ProductPoint::new(TorusPoint::new(coords).unwrap(), vec![], g.clone()).unwrap()
    }

    fn orbit_of_t() -> GrouplessFSet {
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let t = point(&g, &[&[0, 1]]);
        GrouplessFSet::new(base, vec![(t, 1)], FrobeniusOp::new(5, 5).unwrap()).unwrap()
    }

    #[test]
    fn enumerate_orbit_of_t() {
        // (t), (t^5), (t^25), (t^125)
        let s = orbit_of_t();
        let pts = s.enumerate(3).unwrap();
        assert_eq!(pts.len(), 4);
        for (n, (tuple, p)) in pts.iter().enumerate() {
            assert_eq!(tuple, &vec![n as u32]);
            let expect = Poly::monomial(1, 5u128.pow(n as u32), 5);
            assert_eq!(p.torus().coords()[0].rat_part().num(), &expect);
        }
    }

    #[test]
    fn singleton_enumeration() {
        let g = torus_group(1);
        let base = point(&g, &[&[1, 1]]);
        let s = GrouplessFSet::singleton(base.clone(), FrobeniusOp::new(5, 5).unwrap());
        let pts = s.enumerate(7).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0], (vec![], base));
    }

    #[test]
    fn two_summand_count() {
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let t = point(&g, &[&[0, 1]]);
        let t1 = point(&g, &[&[1, 1]]);
        let s = GrouplessFSet::new(base, vec![(t, 1), (t1, 1)], FrobeniusOp::new(5, 5).unwrap())
            .unwrap();
        assert_eq!(s.enumerate(1).unwrap().len(), 4);
    }

    fn monomial_point(g: &Arc<GroupDescriptor>, exp: u128) -> ProductPoint {
        let tower = g.tower().clone();
        let c = TowerElem::from_poly(Poly::monomial(1, exp, 5), tower);
        ProductPoint::new(TorusPoint::new(vec![c]).unwrap(), vec![], g.clone()).unwrap()
    }

    #[test]
    fn membership_in_orbit() {
        let s = orbit_of_t();
        let g = s.group().clone();
        // t^125 = F^3(t)
        let t125 = monomial_point(&g, 125);
        assert_eq!(s.membership(&t125, 5).unwrap(), Membership::Found(vec![3]));
        // t^3 is certified absent: 3 is not a power of 5.
        let t3 = monomial_point(&g, 3);
        assert_eq!(s.membership(&t3, 5).unwrap(), Membership::CertifiedAbsent);
        // base point itself: all-zero tuple.
        let t = monomial_point(&g, 1);
        assert_eq!(s.membership(&t, 5).unwrap(), Membership::Found(vec![0]));
    }

    #[test]
    fn membership_rejects_rational_target_with_certificate() {
        let s = orbit_of_t();
        let g = s.group().clone();
        let tower = g.tower().clone();
        // x = 1/t: candidates are polynomials.
        let c = TowerElem::from_rat(crate::field::ratfunc::RatFunc::t(5).inv().unwrap(), tower);
        let x = ProductPoint::new(TorusPoint::new(vec![c]).unwrap(), vec![], g).unwrap();
        assert_eq!(s.membership(&x, 5).unwrap(), Membership::CertifiedAbsent);
    }

    #[test]
    fn membership_without_growth_falls_back_to_cap() {
        // Constant summand: no growth coordinate.
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let two = point(&g, &[&[2]]);
        let s = GrouplessFSet::new(base, vec![(two, 1)], FrobeniusOp::new(5, 5).unwrap()).unwrap();
        let three = point(&g, &[&[3]]);
        assert_eq!(s.membership(&three, 4).unwrap(), Membership::AbsentUpTo(4));
    }

    #[test]
    fn enumeration_injective_under_degree_growth() {
        // With strictly growing torus degree the tuple-to-point map is
        // injective; checked per instance, then asserted on the enumeration.
        let g = torus_group(1);
        let base = point(&g, &[&[0, 2]]);
        let t = point(&g, &[&[0, 1]]);
        let t1 = point(&g, &[&[1, 1]]);
        let s = GrouplessFSet::new(base, vec![(t, 1), (t1, 2)], FrobeniusOp::new(5, 5).unwrap())
            .unwrap();
        let enumerated = s.enumerate(3).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for (_, p) in &enumerated {
            assert!(seen.insert(format!("{p}")), "duplicate point {p}");
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn normalize_single_stride_unchanged() {
        let s = orbit_of_t();
        let outs = s.normalize_common_k().unwrap();
        assert_eq!(outs.len(), 1);
        assert_eq!(outs[0].summands()[0].1, 1);
    }

    #[test]
    fn normalize_strides_one_two() {
        // strides (1, 2): lcm 2, 2 output sets.
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let t = point(&g, &[&[0, 1]]);
        let t1 = point(&g, &[&[1, 1]]);
        let s = GrouplessFSet::new(base, vec![(t, 1), (t1, 2)], FrobeniusOp::new(5, 5).unwrap())
            .unwrap();
        let outs = s.normalize_common_k().unwrap();
        assert_eq!(outs.len(), 2);
        for o in &outs {
            assert!(o.summands().iter().all(|&(_, k)| k == 2));
        }
    }

    #[test]
    fn normalize_enumeration_agrees() {
        // strides (2, 3): lcm 6, 6 sets; point sets agree up to the cap.
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let t = point(&g, &[&[0, 1]]);
        let t1 = point(&g, &[&[1, 1]]);
        let s = GrouplessFSet::new(base, vec![(t, 2), (t1, 3)], FrobeniusOp::new(5, 5).unwrap())
            .unwrap();
        let outs = s.normalize_common_k_with_residues().unwrap();
        assert_eq!(outs.len(), 6);

        // Compare over a shared raw-exponent window: both sides must produce
        // exactly the points all of whose Frobenius exponents stay in the
        // window. For the original the raw exponent is k_i * n_i; for a
        // normalized set it is k_i * r_i + k * n.
        let window = 12u32;
        let original_strides: Vec<u32> = s.summands().iter().map(|&(_, k)| k).collect();
        let mut original_points = std::collections::BTreeSet::new();
        for (tuple, p) in s.enumerate(window / 2).unwrap() {
            if tuple
                .iter()
                .zip(&original_strides)
                .all(|(&n, &k)| k * n <= window)
            {
                original_points.insert(format!("{p}"));
            }
        }
        let mut normalized_points = std::collections::BTreeSet::new();
        for (residues, set) in &outs {
            let k = set.summands()[0].1;
            for (tuple, p) in set.enumerate(window / k).unwrap() {
                let fits = tuple
                    .iter()
                    .zip(residues.iter().zip(&original_strides))
                    .all(|(&n, (&r, &ki))| ki * r + k * n <= window);
                if fits {
                    normalized_points.insert(format!("{p}"));
                }
            }
        }
        assert_eq!(original_points, normalized_points);
    }

    #[test]
    fn generalized_set_requires_positive_kernel() {
        let g2 = torus_group(2);
        let gamma = Subgroup::new(vec![point(&g2, &[&[0, 1], &[1, 1]])], g2.clone()).unwrap();
        // Identity G_m^2 -> G_m^2 has kernel dimension 0: rejected.
        let id = GroupHom::new(
            vec![vec![1, 0], vec![0, 1]],
            vec![],
            g2.clone(),
            g2.clone(),
            true,
        )
        .unwrap();
        let image_base = ProductPoint::identity(g2.clone());
        let s = GrouplessFSet::singleton(image_base, FrobeniusOp::new(5, 5).unwrap());
        assert!(GeneralizedFSet::new(id, s, gamma).is_err());
    }

    #[test]
    fn pullback_of_identity_singleton() {
        // pi: G_m^2 -> G_m first coordinate; Gamma = <(t, t+1)>;
        // S = {identity}: only c = 0 pulls back (t^c = 1 iff c = 0).
        let g2 = torus_group(2);
        let g1 = torus_group(1);
        let gamma = Subgroup::new(vec![point(&g2, &[&[0, 1], &[1, 1]])], g2.clone()).unwrap();
        let proj = GroupHom::new(vec![vec![1, 0]], vec![], g2, g1.clone(), true).unwrap();
        let s =
            GrouplessFSet::singleton(ProductPoint::identity(g1), FrobeniusOp::new(5, 5).unwrap());
        let gen = GeneralizedFSet::new(proj, s, gamma).unwrap();
        let result = gen.pullback_enumerate(10, 3, 10_000).unwrap();
        assert_eq!(result.members, vec![CoeffVector(vec![0])]);
        assert!(result.all_certified);
    }

    #[test]
    fn image_set_may_use_larger_frobenius_field() {
        // The image set's Frobenius field can differ from the ambient one:
        // the orbit of t under the q' = 25 Frobenius is every other step of
        // the q = 5 orbit.
        let g = torus_group(1);
        let base = ProductPoint::identity(g.clone());
        let t = point(&g, &[&[0, 1]]);
        let coarse =
            GrouplessFSet::new(base, vec![(t, 1)], FrobeniusOp::new(25, 5).unwrap()).unwrap();
        let pts = coarse.enumerate(2).unwrap();
        let exps: Vec<u128> = pts
            .iter()
            .map(|(_, p)| p.torus().coords()[0].rat_part().num().degree().unwrap())
            .collect();
        assert_eq!(exps, vec![1, 25, 625]);
        let t125 = monomial_point(&g, 125);
        // 125 = 5^3 is not an even power of 5: certified absent under F_25.
        assert_eq!(
            coarse.membership(&t125, 5).unwrap(),
            Membership::CertifiedAbsent
        );
    }

    #[test]
    fn pullback_through_elliptic_projection() {
        // Projecting onto the elliptic factor: the preimage of the Frobenius
        // orbit of P picks out the coefficients whose multiple of P is an
        // honest F-power. On the supersingular curve F^2 = [-5], so within
        // bound 30 these are 1 (n = 0), -5 (n = 2) and 25 (n = 4).
        let sc = crate::examples::example1().unwrap();
        let g = sc.descriptor.clone();
        let gamma = sc.gamma.clone();
        let proj = GroupHom::projection(g.clone(), &[], &[0]).unwrap();
        assert_eq!(proj.kernel_dim().unwrap(), 2);
        let target = proj.target().clone();
        let frob = FrobeniusOp::new(5, 5).unwrap();
        let p_downstairs = proj.apply(&sc.points["Q"]).unwrap();
        let orbit = GrouplessFSet::new(
            ProductPoint::identity(target.clone()),
            vec![(p_downstairs, 1)],
            frob,
        )
        .unwrap();
        let set = GeneralizedFSet::new(proj, orbit, gamma).unwrap();
        let result = set.pullback_enumerate(30, 4, 10_000).unwrap();
        assert_eq!(
            result.members,
            vec![
                CoeffVector(vec![-5]),
                CoeffVector(vec![1]),
                CoeffVector(vec![25])
            ]
        );
        // No torus block downstairs, so absence verdicts are only bounded.
        assert!(!result.all_certified);
    }

    #[test]
    fn union_ambient_consistency() {
        let g1 = torus_group(1);
        let g2 = torus_group(2);
        let s1 =
            GrouplessFSet::singleton(ProductPoint::identity(g1), FrobeniusOp::new(5, 5).unwrap());
        let s2 =
            GrouplessFSet::singleton(ProductPoint::identity(g2), FrobeniusOp::new(5, 5).unwrap());
        assert!(FSetUnion::new(vec![s1.clone(), s2], vec![], vec![]).is_err());
        assert!(FSetUnion::new(vec![s1], vec![], vec![]).is_ok());
    }
}
