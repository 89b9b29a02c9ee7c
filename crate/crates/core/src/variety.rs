//! Subvarieties of the ambient product as explicit polynomial systems:
//! Laurent equations on the torus block, per-factor constraints on the
//! elliptic blocks, point membership, and stabilizer computation for the
//! split shapes the case analysis needs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::fp::FpElem;
use crate::field::tower::TowerElem;
use crate::group::descriptor::GroupDescriptor;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::linalg::{rank, IntMat};

/// A Laurent polynomial in the torus coordinates x1..xN: terms with integer
/// exponent vectors and F_p coefficients, kept in a fixed monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    n: usize,
    p: u64,
    /// (exponent vector, coefficient), sorted by exponent vector.
    terms: Vec<(Vec<i64>, FpElem)>,
}

impl LaurentPoly {
    pub fn new(n: usize, p: u64, raw_terms: Vec<(Vec<i64>, i64)>) -> Result<Self> {
        let mut terms: Vec<(Vec<i64>, FpElem)> = Vec::new();
        for (exps, c) in raw_terms {
            if exps.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: exps.len(),
                });
            }
            let coeff = FpElem::new(c, p);
            if coeff.is_zero() {
                continue;
            }
            match terms.iter_mut().find(|(e, _)| e == &exps) {
                Some((_, existing)) => *existing = existing.add(&coeff),
                None => terms.push((exps, coeff)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|(a, _), (b, _)| a.cmp(b));
        Ok(LaurentPoly { n, p, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Vec<i64>, FpElem)] {
        &self.terms
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Evaluates at a torus point. Negative exponents are cleared first by
    /// multiplying through with the minimal monomial, which only rescales by
    /// a unit and so preserves vanishing.
    pub fn vanishes_at(&self, point: &TorusPoint) -> Result<bool> {
        if point.rank() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: point.rank(),
            });
        }
        if self.terms.is_empty() {
            return Ok(true);
        }
        let mins: Vec<i64> = (0..self.n)
            .map(|j| self.terms.iter().map(|(e, _)| e[j]).min().unwrap().min(0))
            .collect();
        let tower = point.coords()[0].field().clone();
        let mut acc = TowerElem::zero(tower.clone());
        for (exps, c) in &self.terms {
            let mut term = TowerElem::constant(c.value() as i64, tower.clone());
            for (coord, (&e, &m)) in point.coords().iter().zip(exps.iter().zip(&mins)) {
                let cleared = e - m;
                if cleared != 0 {
                    term = term.mul(&coord.pow_i64(cleared)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc.is_zero())
    }

    /// Support differences m_i - m_0 against the first support vector in the
    /// fixed order; these characters cut out the stabilizer subtorus.
    pub fn support_differences(&self) -> Vec<Vec<i64>> {
        let Some((first, _)) = self.terms.first() else {
            return Vec::new();
        };
        self.terms
            .iter()
            .skip(1)
            .map(|(e, _)| e.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect()
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c.value())?;
            for (j, &e) in exps.iter().enumerate() {
                if e != 0 {
                    write!(f, "*x{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// A polynomial in the affine coordinates (x, y) of one elliptic factor,
/// with tower coefficients.
#[derive(Clone)]
pub struct EcPoly {
    /// (x-degree, y-degree, coefficient)
    pub terms: Vec<(u32, u32, TowerElem)>,
}

impl EcPoly {
    pub fn vanishes_at(&self, x: &TowerElem, y: &TowerElem) -> bool {
        let tower = x.field().clone();
        let mut acc = TowerElem::zero(tower);
        for (dx, dy, c) in &self.terms {
            let mut term = c.clone();
            if *dx > 0 {
                term = term.mul(&x.pow_i64(*dx as i64).expect("nonneg power"));
            }
            if *dy > 0 {
                term = term.mul(&y.pow_i64(*dy as i64).expect("nonneg power"));
            }
            acc = acc.add(&term);
        }
        acc.is_zero()
    }
}

/// Constraint on one elliptic factor.
#[derive(Clone)]
pub enum EllipticConstraint {
    /// The factor is unconstrained (the whole curve).
    Free,
    /// Affine points must satisfy every polynomial; the flag states whether
    /// the point at infinity belongs to the constrained locus.
    System {
        equations: Vec<EcPoly>,
        contains_infinity: bool,
    },
}

impl EllipticConstraint {
    pub fn is_free(&self) -> bool {
        matches!(self, EllipticConstraint::Free)
    }
}

/// A subvariety of the ambient product: Laurent equations on the torus block
/// plus per-factor elliptic constraints. No equations at all means the full
/// group, explicitly.
pub struct Subvariety {
    torus_equations: Vec<LaurentPoly>,
    elliptic: Vec<EllipticConstraint>,
    group: Arc<GroupDescriptor>,
}

impl Subvariety {
    pub fn new(
        torus_equations: Vec<LaurentPoly>,
        elliptic: Vec<EllipticConstraint>,
        group: Arc<GroupDescriptor>,
    ) -> Result<Self> {
        for eq in &torus_equations {
            if eq.num_vars() != group.torus_rank() {
                return Err(Error::DimensionMismatch {
                    expected: group.torus_rank(),
                    got: eq.num_vars(),
                });
            }
        }
        if elliptic.len() != group.elliptic_count() {
            return Err(Error::DimensionMismatch {
                expected: group.elliptic_count(),
                got: elliptic.len(),
            });
        }
        Ok(Subvariety {
            torus_equations,
            elliptic,
            group,
        })
    }

    /// The full ambient group.
    pub fn full(group: Arc<GroupDescriptor>) -> Self {
        let elliptic = vec![EllipticConstraint::Free; group.elliptic_count()];
        Subvariety {
            torus_equations: Vec::new(),
            elliptic,
            group,
        }
    }

    pub fn group(&self) -> &Arc<GroupDescriptor> {
        &self.group
    }

    pub fn torus_equations(&self) -> &[LaurentPoly] {
        &self.torus_equations
    }

    pub fn elliptic_constraints(&self) -> &[EllipticConstraint] {
        &self.elliptic
    }

    pub fn has_elliptic_constraints(&self) -> bool {
        self.elliptic.iter().any(|c| !c.is_free())
    }

    /// Torus-block membership only: the pruning stage.
    pub fn torus_satisfied(&self, point: &TorusPoint) -> Result<bool> {
        for eq in &self.torus_equations {
            if !eq.vanishes_at(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn elliptic_satisfied(&self, point: &ProductPoint) -> Result<bool> {
        for (constraint, ec) in self.elliptic.iter().zip(point.elliptic()) {
            match constraint {
                EllipticConstraint::Free => {}
                EllipticConstraint::System {
                    equations,
                    contains_infinity,
                } => match ec.xy() {
                    None => {
                        if !contains_infinity {
                            return Ok(false);
                        }
                    }
                    Some((x, y)) => {
                        if !equations.iter().all(|eq| eq.vanishes_at(x, y)) {
                            return Ok(false);
                        }
                    }
                },
            }
        }
        Ok(true)
    }

    /// Full membership; torus equations are evaluated first.
    pub fn contains(&self, point: &ProductPoint) -> Result<bool> {
        if point.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.torus_satisfied(point.torus())? && self.elliptic_satisfied(point)?)
    }
}

/// Identity component data of a stabilizer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizerInfo {
    pub dimension: usize,
    /// Characters cutting out the torus part of the stabilizer.
    pub torus_characters: Vec<Vec<i64>>,
    /// Indices of elliptic factors wholly contained in the stabilizer.
    pub full_elliptic_factors: Vec<usize>,
}

/// Stabilizer of a torus hypersurface f = 0: the subtorus annihilated by the
/// support differences {m_i - m_0}. Dimension is N minus the rank of the
/// difference lattice.
pub fn torus_stabilizer(f: &LaurentPoly) -> Result<StabilizerInfo> {
    if f.is_zero() {
        return Err(Error::InvalidArgument(
            "stabilizer of the zero equation is undefined".into(),
        ));
    }
    let n = f.num_vars();
    let characters = f.support_differences();
    let r = character_rank(&characters);
    Ok(StabilizerInfo {
        dimension: n - r,
        torus_characters: characters,
        full_elliptic_factors: Vec::new(),
    })
}

fn character_rank(characters: &[Vec<i64>]) -> usize {
    if characters.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i128>> = characters
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    rank(&IntMat::from_rows(&rows))
}

/// Stabilizer of a split variety: torus equations only, elliptic factors
/// Free or fully constrained away. The torus part stacks per-equation
/// difference characters; every Free elliptic factor counts dimension 1.
/// With several torus equations this computes a subgroup of the stabilizer;
/// scenario varieties are checked by substitution where it matters.
pub fn product_stabilizer(x: &Subvariety) -> Result<StabilizerInfo> {
    if x.elliptic.iter().any(|c| !c.is_free()) {
        return Err(Error::UnsupportedShape(
            "stabilizer computation needs Free elliptic factors".into(),
        ));
    }
    let n = x.group.torus_rank();
    let mut characters: Vec<Vec<i64>> = Vec::new();
    for eq in &x.torus_equations {
        if eq.is_zero() {
            continue;
        }
        characters.extend(eq.support_differences());
    }
    let r = character_rank(&characters);
    let full_elliptic: Vec<usize> = (0..x.group.elliptic_count()).collect();
    Ok(StabilizerInfo {
        dimension: (n - r) + full_elliptic.len(),
        torus_characters: characters,
        full_elliptic_factors: full_elliptic,
    })
}

/// An integer basis of the subtorus annihilating the given characters: the
/// kernel lattice of the character matrix. Used to sample stabilizer points.
pub fn character_kernel_basis(characters: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if characters.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect();
    }
    let rows: Vec<Vec<i128>> = characters
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let a = IntMat::from_rows(&rows);
    let zero = vec![0i128; characters.len()];
    let Some((_, kernel)) = crate::linalg::solve(&a, &zero) else {
        return Vec::new();
    };
    kernel
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as i64).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Poly;
    use crate::field::tower::TowerField;
    use crate::group::curve::{CurveParams, ECPoint};

    fn tower() -> Arc<TowerField> {
        TowerField::new(Poly::from_dense(&[1, 0, 0, 1], 5)).unwrap()
    }

    fn mixed_group() -> Arc<GroupDescriptor> {
        let curve = CurveParams::from_i64(0, 1, 5).unwrap();
        GroupDescriptor::new(5, 2, vec![curve], tower()).unwrap()
    }

    /// x2 - x1 - 1 on G_m^2.
    fn line() -> LaurentPoly {
        LaurentPoly::new(
            2,
            5,
            vec![(vec![0, 1], 1), (vec![1, 0], -1), (vec![0, 0], -1)],
        )
        .unwrap()
    }

    fn point_on_line(g: &Arc<GroupDescriptor>) -> ProductPoint {
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
    fn line_contains_base_point() {
        let g = mixed_group();
        let x = Subvariety::new(vec![line()], vec![EllipticConstraint::Free], g.clone()).unwrap();
        let q = point_on_line(&g);
        assert!(x.contains(&q).unwrap());
    }

    #[test]
    fn line_rejects_diagonal_point() {
        let g = mixed_group();
        let x = Subvariety::new(vec![line()], vec![EllipticConstraint::Free], g.clone()).unwrap();
        let tw = g.tower().clone();
        let torus =
            TorusPoint::new(vec![TowerElem::t(tw.clone()), TowerElem::t(tw.clone())]).unwrap();
        let p = ECPoint::generic(g.curves()[0], &tw).unwrap();
        let q = ProductPoint::new(torus, vec![p], g.clone()).unwrap();
        assert!(!x.contains(&q).unwrap());
    }

    #[test]
    fn full_group_contains_everything() {
        let g = mixed_group();
        let x = Subvariety::full(g.clone());
        assert!(x.contains(&point_on_line(&g)).unwrap());
        assert!(x.contains(&ProductPoint::identity(g)).unwrap());
    }

    #[test]
    fn laurent_negative_exponents() {
        // x1 * x2 - 1 vanishes exactly on {(g, g^-1)}; check with x1^-1 form:
        // x2 - x1^-1 = 0 multiplied through stays equivalent.
        let g = GroupDescriptor::new(5, 2, vec![], tower()).unwrap();
        let eq = LaurentPoly::new(2, 5, vec![(vec![0, 1], 1), (vec![-1, 0], -1)]).unwrap();
        let tw = g.tower().clone();
        let t = TowerElem::t(tw.clone());
        let good = TorusPoint::new(vec![t.clone(), t.inv().unwrap()]).unwrap();
        assert!(eq.vanishes_at(&good).unwrap());
        let bad = TorusPoint::new(vec![t.clone(), t]).unwrap();
        assert!(!eq.vanishes_at(&bad).unwrap());
    }

    #[test]
    fn monomial_multiple_has_same_zero_set() {
        // Multiplying an equation by a Laurent monomial does not change
        // containment; checked on 20 seeded random points.
        use rand::{Rng, SeedableRng};
        let g = GroupDescriptor::new(5, 2, vec![], tower()).unwrap();
        let tw = g.tower().clone();
        let eq = line();
        let shifted = LaurentPoly::new(
            2,
            5,
            vec![(vec![-1, 2], 1), (vec![0, 1], -1), (vec![-1, 1], -1)],
        )
        .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut on_line = 0;
        for i in 0..20 {
            // Half the samples land on the line by construction.
            let x1 = Poly::from_dense(&[rng.gen_range(0..5), rng.gen_range(0..5), 1], 5);
            let x2 = if i % 2 == 0 {
                x1.add(&Poly::one(5))
            } else {
                Poly::from_dense(&[rng.gen_range(1..5), rng.gen_range(0..5), 1], 5)
            };
            let p = TorusPoint::new(vec![
                TowerElem::from_poly(x1, tw.clone()),
                TowerElem::from_poly(x2, tw.clone()),
            ])
            .unwrap();
            let a = eq.vanishes_at(&p).unwrap();
            let b = shifted.vanishes_at(&p).unwrap();
            assert_eq!(a, b, "{p}");
            on_line += usize::from(a);
        }
        assert!(on_line >= 10);
    }

    #[test]
    fn stabilizer_of_line_is_finite() {
        // Differences of {(0,0), (0,1), (1,0)} span rank 2: dimension 0.
        let info = torus_stabilizer(&line()).unwrap();
        assert_eq!(info.dimension, 0);
    }

    #[test]
    fn stabilizer_of_diagonal_hypersurface() {
        // x1 x2 - 1: support {(1,1), (0,0)}, rank 1: dimension 1, and the
        // stabilizer is {(g, g^-1)}; substitution check on a kernel sample.
        let eq = LaurentPoly::new(2, 5, vec![(vec![1, 1], 1), (vec![0, 0], -1)]).unwrap();
        let info = torus_stabilizer(&eq).unwrap();
        assert_eq!(info.dimension, 1);
        let basis = character_kernel_basis(&info.torus_characters, 2);
        assert_eq!(basis.len(), 1);
        // g x = (g^b1 x1, g^b2 x2) must satisfy the equation when x does.
        let tw = tower();
        let t = TowerElem::t(tw.clone());
        let x = TorusPoint::new(vec![t.clone(), t.inv().unwrap()]).unwrap();
        let g_elem = TowerElem::from_poly(Poly::from_dense(&[3, 1], 5), tw);
        let translated = TorusPoint::new(
            x.coords()
                .iter()
                .zip(&basis[0])
                .map(|(c, &b)| c.mul(&g_elem.pow_i64(b).unwrap()))
                .collect(),
        )
        .unwrap();
        assert!(eq.vanishes_at(&translated).unwrap());
    }

    #[test]
    fn stabilizer_of_x1_equals_one() {
        // x1 - 1 in G_m^1: rank 1, dimension 0.
        let eq = LaurentPoly::new(1, 5, vec![(vec![1], 1), (vec![0], -1)]).unwrap();
        assert_eq!(torus_stabilizer(&eq).unwrap().dimension, 0);
    }

    #[test]
    fn product_stabilizer_of_line_times_curve() {
        // X = C x E with C the line: torus part 0-dimensional, E free.
        let g = mixed_group();
        let x = Subvariety::new(vec![line()], vec![EllipticConstraint::Free], g.clone()).unwrap();
        let info = product_stabilizer(&x).unwrap();
        assert_eq!(info.dimension, 1);
        assert_eq!(info.full_elliptic_factors, vec![0]);
    }

    #[test]
    fn product_stabilizer_of_full_group() {
        let g = mixed_group();
        let x = Subvariety::full(g);
        assert_eq!(product_stabilizer(&x).unwrap().dimension, 3);
    }

    #[test]
    fn product_stabilizer_of_point_times_curve() {
        // {(2, 3)} x E: equations x1 - 2 and x2 - 3; dimension 1 (just E).
        let g = mixed_group();
        let eq1 = LaurentPoly::new(2, 5, vec![(vec![1, 0], 1), (vec![0, 0], -2)]).unwrap();
        let eq2 = LaurentPoly::new(2, 5, vec![(vec![0, 1], 1), (vec![0, 0], -3)]).unwrap();
        let x = Subvariety::new(vec![eq1, eq2], vec![EllipticConstraint::Free], g).unwrap();
        assert_eq!(product_stabilizer(&x).unwrap().dimension, 1);
    }

    #[test]
    fn multi_equation_stabilizer_substitution_check() {
        // Stacking per-equation difference characters computes a subgroup of
        // the stabilizer; the substitution check confirms kernel translates
        // preserve every equation on this system. Equations x1*x2 = 1 and
        // x1^2*x2^2 = 1 share the diagonal kernel {(g, g^-1)}.
        use rand::{Rng, SeedableRng};
        let g = GroupDescriptor::new(5, 2, vec![], tower()).unwrap();
        let eq1 = LaurentPoly::new(2, 5, vec![(vec![1, 1], 1), (vec![0, 0], -1)]).unwrap();
        let eq2 = LaurentPoly::new(2, 5, vec![(vec![2, 2], 1), (vec![0, 0], -1)]).unwrap();
        let x = Subvariety::new(vec![eq1.clone(), eq2.clone()], vec![], g).unwrap();
        let info = product_stabilizer(&x).unwrap();
        assert_eq!(info.dimension, 1);
        let basis = character_kernel_basis(&info.torus_characters, 2);
        assert_eq!(basis.len(), 1);
        let tw = tower();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            // Random parametrized point of X and random subtorus element.
            let gcoord = TowerElem::from_poly(
                Poly::from_dense(&[rng.gen_range(1..5), rng.gen_range(0..5), 1], 5),
                tw.clone(),
            );
            let point = TorusPoint::new(vec![gcoord.clone(), gcoord.inv().unwrap()]).unwrap();
            assert!(eq1.vanishes_at(&point).unwrap());
            let u = TowerElem::from_poly(
                Poly::from_dense(&[rng.gen_range(1..5), rng.gen_range(0..5)], 5),
                tw.clone(),
            );
            let translated = TorusPoint::new(
                point
                    .coords()
                    .iter()
                    .zip(&basis[0])
                    .map(|(c, &e)| c.mul(&u.pow_i64(e).unwrap()))
                    .collect(),
            )
            .unwrap();
            assert!(eq1.vanishes_at(&translated).unwrap());
            assert!(eq2.vanishes_at(&translated).unwrap());
        }
    }

    #[test]
    fn product_stabilizer_rejects_constrained_elliptic() {
        let g = mixed_group();
        let tw = g.tower().clone();
        let pin = EcPoly {
            terms: vec![
                (1, 0, TowerElem::one(tw.clone())),
                (0, 0, TowerElem::t(tw).neg()),
            ],
        };
        let x = Subvariety::new(
            vec![],
            vec![EllipticConstraint::System {
                equations: vec![pin],
                contains_infinity: false,
            }],
            g,
        )
        .unwrap();
        assert!(matches!(
            product_stabilizer(&x),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn elliptic_pinning_constraint() {
        // Constrain the elliptic factor to x-coordinate = t.
        let g = mixed_group();
        let tw = g.tower().clone();
        let pin = EcPoly {
            terms: vec![
                (1, 0, TowerElem::one(tw.clone())),
                (0, 0, TowerElem::t(tw.clone()).neg()),
            ],
        };
        let x = Subvariety::new(
            vec![],
            vec![EllipticConstraint::System {
                equations: vec![pin],
                contains_infinity: false,
            }],
            g.clone(),
        )
        .unwrap();
        let q = point_on_line(&g);
        assert!(x.contains(&q).unwrap());
        let doubled = q.scalar_mul(2).unwrap();
        assert!(!x.contains(&doubled).unwrap());
        // Infinity excluded by the flag.
        let id = ProductPoint::identity(g);
        assert!(!x.contains(&id).unwrap());
    }

    #[test]
    fn dimension_invariant_holds() {
        // dimension = (N - rank) + #full elliptic factors.
        let g = mixed_group();
        let x = Subvariety::new(vec![line()], vec![EllipticConstraint::Free], g).unwrap();
        let info = product_stabilizer(&x).unwrap();
        let r = character_rank(&info.torus_characters);
        assert_eq!(info.dimension, (2 - r) + info.full_elliptic_factors.len());
    }
}
