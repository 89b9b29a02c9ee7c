//! Seeded invariant suites shared by the CLI selftest command and the
//! acceptance tests. Every suite is deterministic for a fixed seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::factor::IrreducibleCache;
use crate::field::poly::Poly;
use crate::field::ratfunc::RatFunc;
use crate::field::tower::{TowerElem, TowerField};
use crate::frob::FrobeniusOp;
use crate::fset::GrouplessFSet;
use crate::group::curve::ECPoint;
use crate::group::descriptor::GroupDescriptor;
use crate::group::hom::GroupHom;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::intpoly::IntPoly;
use crate::zfmod::{torus_membership, CoeffVector, Subgroup};
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx {
    tower: Arc<TowerField>,
    descriptor: Arc<GroupDescriptor>,
    base_ec: ECPoint,
    op: FrobeniusOp,
}

fn ctx() -> Result<Ctx> {
    let sc = crate::examples::example1()?;
    let tower = sc.descriptor.tower().clone();
    let base_ec = ECPoint::generic(sc.descriptor.curves()[0], &tower)?;
    Ok(Ctx {
        tower,
        descriptor: sc.descriptor.clone(),
        base_ec,
        op: FrobeniusOp::new(5, 5)?,
    })
}

fn rand_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: u64, nonzero: bool) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..p as i64)).collect();
        let poly = Poly::from_dense(&coeffs, p);
        if !nonzero || !poly.is_zero() {
            return poly;
        }
    }
}

fn rand_ratfunc(rng: &mut ChaCha8Rng, p: u64, max_deg: u64, nonzero: bool) -> RatFunc {
    loop {
        let num = rand_poly(rng, p, max_deg, nonzero);
        let den = rand_poly(rng, p, max_deg, true);
        let r = RatFunc::new(num, den).expect("nonzero denominator");
        if !nonzero || !r.is_zero() {
            return r;
        }
    }
}

fn rand_tower(rng: &mut ChaCha8Rng, tower: &Arc<TowerField>, nonzero: bool) -> TowerElem {
    loop {
        let a = rand_ratfunc(rng, tower.prime(), 3, false);
        let b = rand_ratfunc(rng, tower.prime(), 2, false);
        let e = TowerElem::new(a, b, tower.clone());
        if !nonzero || !e.is_zero() {
            return e;
        }
    }
}

fn rand_ec(rng: &mut ChaCha8Rng, c: &Ctx) -> Result<ECPoint> {
    let a = rng.gen_range(-3i64..=3);
    let b = rng.gen_range(-2i64..=2);
    let fp = c.op.apply_ec(&c.base_ec, 1)?;
    c.base_ec.scalar_mul(a)?.add(&fp.scalar_mul(b)?)
}

fn rand_product(rng: &mut ChaCha8Rng, c: &Ctx) -> Result<ProductPoint> {
    let torus = TorusPoint::new(vec![
        rand_tower(rng, &c.tower, true),
        rand_tower(rng, &c.tower, true),
    ])?;
    let ec = rand_ec(rng, c)?;
    ProductPoint::new(torus, vec![ec], c.descriptor.clone())
}

pub fn field_axioms(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let mut failures = Vec::new();
    for i in 0..samples {
        let x = rand_tower(&mut rng, &c.tower, true);
        let y = rand_tower(&mut rng, &c.tower, false);
        let z = rand_tower(&mut rng, &c.tower, false);
        if x.add(&y).add(&z) != x.add(&y.add(&z)) {
            failures.push(format!("additive associativity at sample {i}"));
        }
        if x.mul(&y).mul(&z) != x.mul(&y.mul(&z)) {
            failures.push(format!("multiplicative associativity at sample {i}"));
        }
        if x.mul(&y.add(&z)) != x.mul(&y).add(&x.mul(&z)) {
            failures.push(format!("distributivity at sample {i}"));
        }
        if !x.mul(&x.inv()?).is_one() {
            failures.push(format!("inverse at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "field-axioms".into(),
        samples,
        failures,
    })
}

pub fn ratfunc_canonical_equality(seed: u64, samples: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
    let mut failures = Vec::new();
    for i in 0..samples {
        let a = rand_ratfunc(&mut rng, 5, 3, false);
        // Half the pairs are equal by construction (scaled copies).
        let b = if rng.gen_bool(0.5) {
            let scale = rand_poly(&mut rng, 5, 2, true);
            RatFunc::new(a.num().mul(&scale), a.den().mul(&scale)).unwrap()
        } else {
            rand_ratfunc(&mut rng, 5, 3, false)
        };
        let canonical = a == b;
        let cross = a.num().mul(b.den()) == b.num().mul(a.den());
        if canonical != cross {
            failures.push(format!(
                "representation vs cross-multiplication at sample {i}"
            ));
        }
    }
    Ok(SuiteResult {
        name: "ratfunc-canonical-equality".into(),
        samples,
        failures,
    })
}

pub fn qth_power_agreement(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
    let mut failures = Vec::new();
    for i in 0..samples {
        let x = rand_tower(&mut rng, &c.tower, false);
        let y = rand_tower(&mut rng, &c.tower, false);
        let mut repeated = TowerElem::one(c.tower.clone());
        for _ in 0..5 {
            repeated = repeated.mul(&x);
        }
        if x.qth_power(5)? != repeated {
            failures.push(format!("q-th power vs repeated product at sample {i}"));
        }
        if x.add(&y).qth_power(5)? != x.qth_power(5)?.add(&y.qth_power(5)?) {
            failures.push(format!("freshman's dream at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "qth-power-agreement".into(),
        samples,
        failures,
    })
}

pub fn group_axioms(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
    let mut failures = Vec::new();
    let identity = ProductPoint::identity(c.descriptor.clone());
    for i in 0..samples {
        let p = rand_product(&mut rng, &c)?;
        if p.add(&identity)? != p {
            failures.push(format!("identity at sample {i}"));
        }
        if !p.add(&p.neg()?)?.is_identity() {
            failures.push(format!("inverse at sample {i}"));
        }
        // Associativity on a quarter of the samples (triples cost more).
        if i % 4 == 0 {
            let q = rand_product(&mut rng, &c)?;
            let r = rand_product(&mut rng, &c)?;
            if p.add(&q)?.add(&r)? != p.add(&q.add(&r)?)? {
                failures.push(format!("associativity at sample {i}"));
            }
        }
    }
    Ok(SuiteResult {
        name: "group-axioms".into(),
        samples,
        failures,
    })
}

pub fn curve_equation_closure(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    let mut failures = Vec::new();
    let curve = c.descriptor.curves()[0];
    for i in 0..samples {
        let p = rand_ec(&mut rng, &c)?;
        let q = rand_ec(&mut rng, &c)?;
        let sum = p.add(&q)?;
        if let Some((x, y)) = sum.xy() {
            if y.mul(y) != curve.rhs(x) {
                failures.push(format!("off-curve sum at sample {i}"));
            }
        }
    }
    Ok(SuiteResult {
        name: "curve-equation-closure".into(),
        samples,
        failures,
    })
}

pub fn hom_additivity(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x06);
    let mut failures = Vec::new();
    let projection = GroupHom::projection(c.descriptor.clone(), &[0, 1], &[])?;
    let torus_only = GroupDescriptor::new(5, 1, vec![], c.tower.clone())?;
    let monomial = GroupHom::new(
        vec![vec![1, 1]],
        vec![],
        projection.target().clone(),
        torus_only,
        false,
    )?;
    for i in 0..samples {
        let p = rand_product(&mut rng, &c)?;
        let q = rand_product(&mut rng, &c)?;
        let lhs = projection.apply(&p.add(&q)?)?;
        let rhs = projection.apply(&p)?.add(&projection.apply(&q)?)?;
        if lhs != rhs {
            failures.push(format!("projection additivity at sample {i}"));
        }
        if monomial.apply(&lhs)? != monomial.apply(&rhs)? {
            failures.push(format!("monomial map mismatch at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "hom-additivity".into(),
        samples,
        failures,
    })
}

pub fn scalar_additivity(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x07);
    let mut failures = Vec::new();
    for i in 0..samples {
        let p = rand_ec(&mut rng, &c)?;
        let m = rng.gen_range(-8i64..=8);
        let n = rng.gen_range(-8i64..=8);
        if p.scalar_mul(m + n)? != p.scalar_mul(m)?.add(&p.scalar_mul(n)?)? {
            failures.push(format!("scalar additivity at sample {i} (m={m}, n={n})"));
        }
    }
    Ok(SuiteResult {
        name: "scalar-additivity".into(),
        samples,
        failures,
    })
}

pub fn frobenius_additivity(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x08);
    let mut failures = Vec::new();
    for i in 0..samples {
        let p = rand_product(&mut rng, &c)?;
        let q = rand_product(&mut rng, &c)?;
        let lhs = c.op.apply(&p.add(&q)?, 1)?;
        let rhs = c.op.apply(&p, 1)?.add(&c.op.apply(&q, 1)?)?;
        if lhs != rhs {
            failures.push(format!("Frobenius additivity at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "frobenius-additivity".into(),
        samples,
        failures,
    })
}

pub fn frobenius_is_torus_scalar(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x09);
    let mut failures = Vec::new();
    for i in 0..samples {
        let t = TorusPoint::new(vec![
            rand_tower(&mut rng, &c.tower, true),
            rand_tower(&mut rng, &c.tower, true),
        ])?;
        if t.qth_power(5)? != t.pow_i64(5)? {
            failures.push(format!("torus Frobenius vs [q] at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "frobenius-torus-scalar".into(),
        samples,
        failures,
    })
}

pub fn evaluate_additivity(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0a);
    let mut failures = Vec::new();
    let q = crate::examples::example1()?.points["Q"].clone();
    let second = c.op.apply(&q, 1)?;
    let gamma = Subgroup::new(vec![q, second], c.descriptor.clone())?;
    for i in 0..samples {
        let c1 = CoeffVector(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let c2 = CoeffVector(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let lhs = gamma.evaluate(&c1)?.add(&gamma.evaluate(&c2)?)?;
        let rhs = gamma.evaluate(&c1.add(&c2))?;
        if lhs != rhs {
            failures.push(format!("evaluate additivity at sample {i}"));
        }
    }
    Ok(SuiteResult {
        name: "evaluate-additivity".into(),
        samples,
        failures,
    })
}

fn rand_torus_gamma(
    rng: &mut ChaCha8Rng,
    tower: &Arc<TowerField>,
) -> Result<(Subgroup, Arc<GroupDescriptor>)> {
    let rank = rng.gen_range(1..=2usize);
    let n = rng.gen_range(1..=2usize);
    let descriptor = GroupDescriptor::new(5, n, vec![], tower.clone())?;
    let mut gens = Vec::new();
    for _ in 0..rank {
        let coords = (0..n)
            .map(|_| {
                // Monomial-shaped coordinates c * t^a * (t+1)^b keep the
                // valuation systems small and nondegenerate.
                let unit = rng.gen_range(1..5i64);
                let a = rng.gen_range(0..=2u64);
                let b = rng.gen_range(0..=2u64);
                let poly = Poly::constant(unit, 5)
                    .mul(&Poly::t(5).pow(a))
                    .mul(&Poly::from_dense(&[1, 1], 5).pow(b));
                TowerElem::from_poly(poly, tower.clone())
            })
            .collect();
        gens.push(ProductPoint::new(
            TorusPoint::new(coords)?,
            vec![],
            descriptor.clone(),
        )?);
    }
    Ok((Subgroup::new(gens, descriptor.clone())?, descriptor))
}

/// Oracle equivalence: the exact valuation decision against bounded search.
pub fn torus_membership_oracle(seed: u64, instances: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b);
    let mut cache = IrreducibleCache::new(5);
    let mut failures = Vec::new();
    for i in 0..instances {
        let (gamma, descriptor) = rand_torus_gamma(&mut rng, &c.tower)?;
        // Target: either a bounded member or a perturbed outsider.
        let in_group = rng.gen_bool(0.6);
        let target = if in_group {
            let coeffs = CoeffVector((0..gamma.rank()).map(|_| rng.gen_range(-3..=3)).collect());
            gamma.evaluate(&coeffs)?
        } else {
            let coords = (0..descriptor.torus_rank())
                .map(|_| {
                    let unit = rng.gen_range(1..5i64);
                    let a = rng.gen_range(0..=3u64);
                    let extra = rng.gen_range(0..=1u64);
                    let poly = Poly::constant(unit, 5)
                        .mul(&Poly::t(5).pow(a))
                        .mul(&Poly::from_dense(&[2, 1], 5).pow(extra));
                    TowerElem::from_poly(poly, c.tower.clone())
                })
                .collect();
            ProductPoint::new(TorusPoint::new(coords)?, vec![], descriptor.clone())?
        };
        let exact = torus_membership(target.torus(), &gamma, &mut cache)?;
        let bounded = gamma.bounded_membership(&target, 3, 100_000)?;
        match (&exact, &bounded) {
            (None, Some(found)) => failures.push(format!(
                "instance {i}: exact decision missed bounded witness {found}"
            )),
            (Some(w), _) => {
                if gamma.evaluate(w)? != target {
                    failures.push(format!("instance {i}: witness {w} does not evaluate"));
                }
            }
            (None, None) => {}
        }
    }
    Ok(SuiteResult {
        name: "torus-membership-oracle".into(),
        samples: instances,
        failures,
    })
}

pub fn torus_membership_roundtrip(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0c);
    let mut cache = IrreducibleCache::new(5);
    let mut failures = Vec::new();
    for i in 0..samples {
        let (gamma, _) = rand_torus_gamma(&mut rng, &c.tower)?;
        let coeffs = CoeffVector((0..gamma.rank()).map(|_| rng.gen_range(-5..=5)).collect());
        let point = gamma.evaluate(&coeffs)?;
        match torus_membership(point.torus(), &gamma, &mut cache)? {
            None => failures.push(format!("sample {i}: constructed member not found")),
            Some(w) => {
                if gamma.evaluate(&w)? != point {
                    failures.push(format!("sample {i}: witness {w} evaluates wrong"));
                }
            }
        }
    }
    Ok(SuiteResult {
        name: "torus-membership-roundtrip".into(),
        samples,
        failures,
    })
}

/// Random small F-sets with mixed strides: the union of the common-stride
/// normalization enumerates the same points over a raw-exponent window.
pub fn normalize_common_k_agreement(seed: u64, instances: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0d);
    let mut failures = Vec::new();
    let window = 8u32;
    for i in 0..instances {
        let descriptor = GroupDescriptor::new(5, 1, vec![], c.tower.clone())?;
        let r = rng.gen_range(1..=2usize);
        let base_exp = rng.gen_range(0..=1u64);
        let base = ProductPoint::new(
            TorusPoint::new(vec![TowerElem::from_poly(
                Poly::t(5).pow(base_exp).scale(rng.gen_range(1..5i64)),
                c.tower.clone(),
            )])?,
            vec![],
            descriptor.clone(),
        )?;
        let summands = (0..r)
            .map(|_| {
                // Monomial summands keep term counts tiny at deep exponents.
                let exp = rng.gen_range(1..=2u64);
                let point = ProductPoint::new(
                    TorusPoint::new(vec![TowerElem::from_poly(
                        Poly::t(5).pow(exp),
                        c.tower.clone(),
                    )])
                    .unwrap(),
                    vec![],
                    descriptor.clone(),
                )
                .unwrap();
                (point, rng.gen_range(1..=3u32))
            })
            .collect::<Vec<_>>();
        let set = GrouplessFSet::new(base, summands, c.op)?;
        let strides: Vec<u32> = set.summands().iter().map(|&(_, k)| k).collect();

        let mut original = std::collections::BTreeSet::new();
        for (tuple, p) in set.enumerate(window)? {
            if tuple.iter().zip(&strides).all(|(&n, &k)| k * n <= window) {
                original.insert(format!("{p}"));
            }
        }
        let mut normalized = std::collections::BTreeSet::new();
        for (residues, out) in set.normalize_common_k_with_residues()? {
            let k = out.summands()[0].1;
            for (tuple, p) in out.enumerate(window / k)? {
                let fits = tuple
                    .iter()
                    .zip(residues.iter().zip(&strides))
                    .all(|(&n, (&r, &ki))| ki * r + k * n <= window);
                if fits {
                    normalized.insert(format!("{p}"));
                }
            }
        }
        if original != normalized {
            failures.push(format!(
                "instance {i}: window sets differ ({} vs {} points)",
                original.len(),
                normalized.len()
            ));
        }
    }
    Ok(SuiteResult {
        name: "normalize-common-k".into(),
        samples: instances,
        failures,
    })
}

pub fn fset_membership_roundtrip(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0e);
    let mut failures = Vec::new();
    for i in 0..samples {
        let descriptor = GroupDescriptor::new(5, 1, vec![], c.tower.clone())?;
        let point_of = |exp: u64, tower: &Arc<TowerField>| {
            ProductPoint::new(
                TorusPoint::new(vec![TowerElem::from_poly(
                    Poly::t(5).pow(exp),
                    tower.clone(),
                )])
                .unwrap(),
                vec![],
                descriptor.clone(),
            )
            .unwrap()
        };
        let base = point_of(rng.gen_range(0..=1), &c.tower);
        let r = rng.gen_range(1..=2usize);
        let summands: Vec<_> = (0..r)
            .map(|_| {
                (
                    point_of(rng.gen_range(1..=2), &c.tower),
                    rng.gen_range(1..=2u32),
                )
            })
            .collect();
        let set = GrouplessFSet::new(base, summands, c.op)?;
        let cap = 3;
        let enumerated = set.enumerate(cap)?;
        let pick = rng.gen_range(0..enumerated.len());
        let (_, target) = &enumerated[pick];
        match set.membership(target, cap)? {
            crate::fset::Membership::Found(tuple) => {
                if &set.point_at(&tuple)? != target {
                    failures.push(format!("sample {i}: tuple does not reproduce point"));
                }
            }
            other => failures.push(format!("sample {i}: expected Found, got {other:?}")),
        }
    }
    Ok(SuiteResult {
        name: "fset-membership-roundtrip".into(),
        samples,
        failures,
    })
}

pub fn recurrence_companion_shift(seed: u64, samples: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0f);
    let mut failures = Vec::new();
    for i in 0..samples {
        let m = rng.gen_range(1..=4usize);
        let mut coeffs: Vec<i64> = (0..m).map(|_| rng.gen_range(-9..=9)).collect();
        coeffs.push(1);
        let h = IntPoly::from_i64(&coeffs).unwrap();
        let n = rng.gen_range(0..=30u64);
        let a_n = h.power_mod(n);
        let a_next = h.power_mod(n + 1);
        if h.companion_step(&a_n) != a_next {
            failures.push(format!(
                "sample {i}: companion step mismatch (h={h}, n={n})"
            ));
        }
    }
    Ok(SuiteResult {
        name: "recurrence-companion-shift".into(),
        samples,
        failures,
    })
}

pub fn stabilizer_substitution(seed: u64, samples: usize) -> Result<SuiteResult> {
    let c = ctx()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10);
    let mut failures = Vec::new();
    // x1*x2 = 1 with its known parametrization (g, g^-1).
    let eq = crate::parse::parse_laurent("x1*x2 - 1", 2, 5)?;
    let info = crate::variety::torus_stabilizer(&eq)?;
    let basis = crate::variety::character_kernel_basis(&info.torus_characters, 2);
    for i in 0..samples {
        let u = rand_tower(&mut rng, &c.tower, true);
        let g = rand_tower(&mut rng, &c.tower, true);
        let x = TorusPoint::new(vec![g.clone(), g.inv()?])?;
        for b in &basis {
            let translated = TorusPoint::new(
                x.coords()
                    .iter()
                    .zip(b)
                    .map(|(coord, &e)| coord.mul(&u.pow_i64(e).unwrap()))
                    .collect(),
            )?;
            if !eq.vanishes_at(&translated)? {
                failures.push(format!("sample {i}: stabilizer translate left the variety"));
            }
        }
    }
    Ok(SuiteResult {
        name: "stabilizer-substitution".into(),
        samples,
        failures,
    })
}

/// The built-in scenarios load, validate, and carry working certificates.
pub fn builtin_scenarios_validate(_seed: u64) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    for (name, sc) in [
        ("example1", crate::examples::example1()?),
        ("example2", crate::examples::example2()?),
    ] {
        if sc.gamma.rank() != 1 {
            failures.push(format!("{name}: unexpected subgroup rank"));
        }
        if sc.certificate.is_none() {
            failures.push(format!("{name}: missing certificate"));
        }
        let small = crate::intersect::brute_intersect(&sc.variety, &sc.gamma, 6, 100_000, 1)?;
        let coeffs: Vec<i64> = small
            .witnesses
            .iter()
            .map(|(c, _)| c.entries()[0])
            .collect();
        if coeffs != vec![1, 5] {
            failures.push(format!("{name}: unexpected small witnesses {coeffs:?}"));
        }
    }
    Ok(SuiteResult {
        name: "builtin-scenarios".into(),
        samples: 2,
        failures,
    })
}

pub fn charpoly_relations(_seed: u64) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut samples = 0;
    for (a4, a6) in [(0i64, 1i64), (1, 0)] {
        let curve = crate::group::curve::CurveParams::from_i64(a4, a6, 5)?;
        let h = crate::frob::char_poly_frobenius(&curve, 5)?;
        let tower = TowerField::new(curve.generic_point_modulus())?;
        let base = ECPoint::generic(curve, &tower)?;
        let op = FrobeniusOp::new(5, 5)?;
        let points = crate::frob::relation_samples(&curve, &base, &op, 20)?;
        samples += points.len();
        if !crate::frob::verify_relation(&h, &op, &points)? {
            failures.push(format!("char poly relation fails on curve ({a4}, {a6})"));
        }
        if !crate::frob::relation_holds_generically(&curve, &h, 5)? {
            failures.push(format!("generic relation fails on curve ({a4}, {a6})"));
        }
    }
    Ok(SuiteResult {
        name: "charpoly-relations".into(),
        samples,
        failures,
    })
}

/// Runs every suite with spec sample counts.
pub fn run_all(seed: u64) -> Result<Vec<SuiteResult>> {
    Ok(vec![
        field_axioms(seed, 200)?,
        ratfunc_canonical_equality(seed, 200)?,
        qth_power_agreement(seed, 50)?,
        group_axioms(seed, 200)?,
        curve_equation_closure(seed, 100)?,
        hom_additivity(seed, 100)?,
        scalar_additivity(seed, 50)?,
        frobenius_additivity(seed, 100)?,
        frobenius_is_torus_scalar(seed, 50)?,
        evaluate_additivity(seed, 100)?,
        torus_membership_oracle(seed, 30)?,
        torus_membership_roundtrip(seed, 50)?,
        normalize_common_k_agreement(seed, 20)?,
        fset_membership_roundtrip(seed, 50)?,
        recurrence_companion_shift(seed, 100)?,
        stabilizer_substitution(seed, 20)?,
        charpoly_relations(seed)?,
        builtin_scenarios_validate(seed)?,
    ])
}
