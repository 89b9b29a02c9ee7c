//! Finitely generated subgroups, their `Z[F]`-module spans, enumeration by
//! coefficient vectors, and membership testing.
//!
//! Membership is exact on pure torus blocks (valuation vectors plus the
//! leading-unit character, solved as one integer system) and bounded-search
//! elsewhere: elliptic heights grow quadratically in the coefficients, so a
//! bounded verdict is all the brute-force oracle needs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::{factor, IrreducibleCache};
use crate::field::poly::Poly;
use crate::field::ratfunc::RatFunc;
use crate::frob::{verify_relation, FrobeniusOp};
use crate::group::descriptor::GroupDescriptor;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::intpoly::IntPoly;
use crate::linalg::{solve, solve_mod, IntMat};

/// Default ceiling on enumeration size.
pub const DEFAULT_ENUM_BUDGET: u128 = 10_000_000;

/// Integer coefficients addressing an element of a subgroup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CoeffVector(pub Vec<i64>);

impl CoeffVector {
    pub fn zero(rank: usize) -> Self {
        CoeffVector(vec![0; rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "coefficient length mismatch");
        CoeffVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A finitely generated subgroup given by explicit generator points.
/// Generators are not assumed independent or torsion-free; membership
/// returns any witness.
#[derive(Clone)]
pub struct Subgroup {
    generators: Vec<ProductPoint>,
    ambient: Arc<GroupDescriptor>,
}

impl Subgroup {
    pub fn new(generators: Vec<ProductPoint>, ambient: Arc<GroupDescriptor>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Validation(
                "subgroup needs at least one generator".into(),
            ));
        }
        for g in &generators {
            if g.group() != &ambient {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(Subgroup {
            generators,
            ambient,
        })
    }

    pub fn generators(&self) -> &[ProductPoint] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient(&self) -> &Arc<GroupDescriptor> {
        &self.ambient
    }

    /// Sum of c_j * gamma_j in the group law.
    pub fn evaluate(&self, coeffs: &CoeffVector) -> Result<ProductPoint> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        let mut acc = ProductPoint::identity(self.ambient.clone());
        for (g, &c) in self.generators.iter().zip(coeffs.entries()) {
            if c != 0 {
                acc = acc.add(&g.scalar_mul(c)?)?;
            }
        }
        Ok(acc)
    }

    /// Torus block of the evaluation only; elliptic factors stay untouched.
    /// This is the pruning path for membership and intersection scans.
    pub fn evaluate_torus(&self, coeffs: &CoeffVector) -> Result<TorusPoint> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        let mut acc = TorusPoint::identity_of_rank(self.ambient.torus_rank(), self.ambient.tower());
        for (g, &c) in self.generators.iter().zip(coeffs.entries()) {
            if c != 0 {
                acc = acc.mul(&g.torus().pow_i64(c)?)?;
            }
        }
        Ok(acc)
    }

    /// The pure-torus subgroup spanned by the torus blocks of the generators.
    pub fn torus_restriction(&self) -> Result<Subgroup> {
        let ambient = GroupDescriptor::new(
            self.ambient.q(),
            self.ambient.torus_rank(),
            vec![],
            self.ambient.tower().clone(),
        )?;
        let generators = self
            .generators
            .iter()
            .map(|g| ProductPoint::new(g.torus().clone(), vec![], ambient.clone()))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::new(generators, ambient)
    }

    /// Streaming enumeration of all coefficient vectors with max-norm <= B,
    /// in lexicographic order. Fails upfront when (2B+1)^rank exceeds budget.
    pub fn enumerate_coeffs(&self, bound: i64, budget: u128) -> Result<CoeffIter> {
        if bound < 0 {
            return Err(Error::InvalidArgument("bound must be >= 0".into()));
        }
        let width = 2 * bound as u128 + 1;
        let mut total: u128 = 1;
        for _ in 0..self.rank() {
            total = total.checked_mul(width).ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget,
            })?;
        }
        if total > budget {
            return Err(Error::BudgetExceeded {
                required: total,
                budget,
            });
        }
        Ok(CoeffIter {
            bound,
            current: Some(vec![-bound; self.rank()]),
        })
    }

    /// Enumeration with full point evaluation, as (coeffs, point) pairs.
    pub fn enumerate(
        &self,
        bound: i64,
        budget: u128,
    ) -> Result<impl Iterator<Item = Result<(CoeffVector, ProductPoint)>> + '_> {
        let iter = self.enumerate_coeffs(bound, budget)?;
        Ok(iter.map(move |c| {
            let point = self.evaluate(&c)?;
            Ok((c, point))
        }))
    }

    /// Bounded membership: first witness in lexicographic order with
    /// max-norm <= bound; `None` only means "no witness within the bound".
    /// Candidates failing on the torus block never evaluate elliptic parts.
    pub fn bounded_membership(
        &self,
        x: &ProductPoint,
        bound: i64,
        budget: u128,
    ) -> Result<Option<CoeffVector>> {
        if x.group() != &self.ambient {
            return Err(Error::GroupMismatch);
        }
        for coeffs in self.enumerate_coeffs(bound, budget)? {
            if &self.evaluate_torus(&coeffs)? != x.torus() {
                continue;
            }
            if &self.evaluate(&coeffs)? == x {
                return Ok(Some(coeffs));
            }
        }
        Ok(None)
    }
}

/// Lexicographic odometer over [-B, B]^rank.
pub struct CoeffIter {
    bound: i64,
    current: Option<Vec<i64>>,
}

impl Iterator for CoeffIter {
    type Item = CoeffVector;

    fn next(&mut self) -> Option<CoeffVector> {
        let current = self.current.take()?;
        let mut next = current.clone();
        let mut done = true;
        for slot in next.iter_mut().rev() {
            if *slot < self.bound {
                *slot += 1;
                done = false;
                break;
            }
            *slot = -self.bound;
        }
        if !done {
            self.current = Some(next);
        }
        Some(CoeffVector(current))
    }
}

/// The `Z[F]`-module span of a subgroup: generators F^i(gamma_j) for
/// 0 <= i < deg h, which generate the span because h(F) = 0.
pub struct ModuleSpan {
    base: Subgroup,
    relation: IntPoly,
    span_generators: Vec<ProductPoint>,
}

impl ModuleSpan {
    pub fn base(&self) -> &Subgroup {
        &self.base
    }

    pub fn relation(&self) -> &IntPoly {
        &self.relation
    }

    /// Ordered with the base generator outermost: gamma_1, F(gamma_1), ...,
    /// F^(m-1)(gamma_1), gamma_2, ...
    pub fn span_generators(&self) -> &[ProductPoint] {
        &self.span_generators
    }
}

/// Builds the span after verifying the relation actually annihilates the
/// generators: h(q) = 0 is required on a torus block (the q-power map is
/// multiplication by q there) and h(F) is checked on every elliptic part.
pub fn span_generators(gamma: &Subgroup, h: &IntPoly, op: &FrobeniusOp) -> Result<ModuleSpan> {
    let ambient = gamma.ambient();
    if ambient.torus_rank() > 0 {
        let at_q = h.eval(&num_bigint::BigInt::from(ambient.q()));
        if at_q != num_bigint::BigInt::from(0) {
            return Err(Error::InvalidRelation(format!(
                "h does not annihilate the torus block: h({}) = {at_q}",
                ambient.q()
            )));
        }
    }
    let elliptic_samples: Vec<_> = gamma
        .generators()
        .iter()
        .flat_map(|g| g.elliptic().iter().cloned())
        .collect();
    if !verify_relation(h, op, &elliptic_samples)? {
        return Err(Error::InvalidRelation(
            "h(F) does not annihilate the elliptic parts of the generators".into(),
        ));
    }
    let mut span = Vec::with_capacity(h.degree() * gamma.rank());
    for g in gamma.generators() {
        let mut image = g.clone();
        for i in 0..h.degree() {
            if i > 0 {
                image = op.apply(&image, 1)?;
            }
            span.push(image.clone());
        }
    }
    Ok(ModuleSpan {
        base: gamma.clone(),
        relation: h.clone(),
        span_generators: span,
    })
}

/// Exact membership on a pure torus: factor every coordinate into monic
/// irreducibles, equate valuation vectors over Z and the leading-unit
/// characters in F_p^*, and solve the combined integer/modular system.
pub fn torus_membership(
    x: &TorusPoint,
    gamma: &Subgroup,
    cache: &mut IrreducibleCache,
) -> Result<Option<CoeffVector>> {
    let ambient = gamma.ambient();
    if ambient.elliptic_count() != 0 {
        return Err(Error::UnsupportedShape(
            "exact membership needs a pure torus ambient group".into(),
        ));
    }
    let n = ambient.torus_rank();
    if x.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.rank(),
        });
    }
    let p = ambient.prime();
    let units = crate::field::fp::UnitGroup::new(p)?;
    let m = units.order() as i128;

    let rational = |e: &crate::field::tower::TowerElem| -> Result<RatFunc> {
        if !e.is_rational() {
            return Err(Error::UnsupportedCoordinate(
                "coordinate has a nonzero s-part; the valuation map needs F_p(t)".into(),
            ));
        }
        Ok(e.rat_part().clone())
    };

    // Factor every coordinate once.
    type Factored = (u64, std::collections::BTreeMap<Poly, i128>);
    let factor_rat = |f: &RatFunc, cache: &mut IrreducibleCache| -> Result<Factored> {
        let (unit_n, num_f) = factor(f.num(), cache)?;
        let (unit_d, den_f) = factor(f.den(), cache)?;
        debug_assert_eq!(unit_d, 1, "denominators are monic");
        let mut vals: std::collections::BTreeMap<Poly, i128> = std::collections::BTreeMap::new();
        for (q, e) in num_f {
            *vals.entry(q).or_insert(0) += e as i128;
        }
        for (q, e) in den_f {
            *vals.entry(q).or_insert(0) -= e as i128;
        }
        vals.retain(|_, v| *v != 0);
        Ok((unit_n, vals))
    };

    let mut gen_coords: Vec<Vec<Factored>> = Vec::with_capacity(gamma.rank());
    for g in gamma.generators() {
        let mut per_coord = Vec::with_capacity(n);
        for c in g.torus().coords() {
            per_coord.push(factor_rat(&rational(c)?, cache)?);
        }
        gen_coords.push(per_coord);
    }
    let mut x_coords: Vec<Factored> = Vec::with_capacity(n);
    for c in x.coords() {
        x_coords.push(factor_rat(&rational(c)?, cache)?);
    }

    // Row space: one row per (coordinate, irreducible) pair, sorted.
    let mut places: Vec<(usize, Poly)> = Vec::new();
    for i in 0..n {
        let mut seen: std::collections::BTreeSet<Poly> = std::collections::BTreeSet::new();
        for g in &gen_coords {
            seen.extend(g[i].1.keys().cloned());
        }
        seen.extend(x_coords[i].1.keys().cloned());
        places.extend(seen.into_iter().map(|q| (i, q)));
    }

    let rows: Vec<Vec<i128>> = places
        .iter()
        .map(|(i, q)| {
            gen_coords
                .iter()
                .map(|g| g[*i].1.get(q).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    let rhs: Vec<i128> = places
        .iter()
        .map(|(i, q)| x_coords[*i].1.get(q).copied().unwrap_or(0))
        .collect();

    let a = IntMat::from_rows(&rows);
    let a = if rows.is_empty() {
        IntMat::zero(0, gamma.rank())
    } else {
        a
    };
    let Some((particular, kernel)) = solve(&a, &rhs) else {
        return Ok(None);
    };

    // Unit character rows: one per coordinate, modulo p - 1.
    let unit_rows: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            gen_coords
                .iter()
                .map(|g| units.log(g[i].0).map(|v| v as i128))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit_rhs: Vec<i128> = (0..n)
        .map(|i| units.log(x_coords[i].0).map(|v| v as i128))
        .collect::<Result<Vec<_>>>()?;
    let w = IntMat::from_rows(&unit_rows);

    // Need lambda with W (particular + K lambda) = unit_rhs (mod m).
    let offset = w.mul_vec(&particular);
    let target: Vec<i128> = unit_rhs
        .iter()
        .zip(&offset)
        .map(|(t, o)| (t - o).rem_euclid(m))
        .collect();
    let coeffs_i128: Vec<i128> = if kernel.is_empty() {
        if target.iter().any(|&t| t != 0) {
            return Ok(None);
        }
        particular
    } else {
        let wk_rows: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                kernel
                    .iter()
                    .map(|k| {
                        k.iter()
                            .zip(w.row(i))
                            .map(|(&kv, &wv)| kv * wv)
                            .sum::<i128>()
                    })
                    .collect()
            })
            .collect();
        let wk = IntMat::from_rows(&wk_rows);
        let Some(lambda) = solve_mod(&wk, &target, m) else {
            return Ok(None);
        };
        let mut c = particular;
        for (k, &l) in kernel.iter().zip(&lambda) {
            for (slot, &kv) in c.iter_mut().zip(k) {
                *slot += l * kv;
            }
        }
        c
    };

    let coeffs = CoeffVector(
        coeffs_i128
            .iter()
            .map(|&c| {
                i64::try_from(c)
                    .map_err(|_| Error::ResourceLimit("membership witness exceeds i64".into()))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    // Matching valuations at every irreducible plus a matching leading unit
    // pin down each coordinate exactly, so the witness must evaluate to x.
    let evaluated = gamma.evaluate(&coeffs)?;
    let candidate = ProductPoint::new(x.clone(), vec![], ambient.clone())?;
    debug_assert_eq!(evaluated, candidate, "valuation witness failed to evaluate");
    if evaluated == candidate {
        Ok(Some(coeffs))
    } else {
        Ok(None)
    }
}
