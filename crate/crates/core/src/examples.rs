//! Built-in scenarios: the two line-in-a-product intersections (one
//! supersingular factor, one ordinary) with their certificates, and the
//! recurrence-engine demonstration.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::poly::Poly;
use crate::field::tower::{TowerElem, TowerField};
use crate::frob::FrobeniusOp;
use crate::fset::{FSetUnion, GeneralizedFSet, GrouplessFSet};
use crate::group::curve::{CurveParams, ECPoint};
use crate::group::descriptor::GroupDescriptor;
use crate::group::hom::GroupHom;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::intersect::{check_twist_identity, Certificate, TwistIdentityReport};
use crate::intpoly::IntPoly;
use crate::scenario::Scenario;
use crate::zfmod::Subgroup;

/// Default coefficient bound: covers 5^0..5^3 with room to spare.
pub const DEFAULT_BOUND: i64 = 130;
/// Default exponent cap: three nontrivial Frobenius steps.
pub const DEFAULT_CAP: u32 = 3;

fn line_scenario(name: &str, curve: CurveParams, d: Poly) -> Result<Scenario> {
    let tower = TowerField::new(d)?;
    let descriptor = GroupDescriptor::new(5, 2, vec![curve], tower.clone())?;

    let t = TowerElem::t(tower.clone());
    let t1 = TowerElem::from_poly(Poly::from_dense(&[1, 1], 5), tower.clone());
    let base_ec = ECPoint::generic(curve, &tower)?;
    let q_point = ProductPoint::new(
        TorusPoint::new(vec![t.clone(), t1.clone()])?,
        vec![base_ec.clone()],
        descriptor.clone(),
    )?;
    let gamma = Subgroup::new(vec![q_point.clone()], descriptor.clone())?;

    let line = crate::parse::parse_laurent("x2 - x1 - 1", 2, 5)?;
    let variety = crate::variety::Subvariety::new(
        vec![line],
        vec![crate::variety::EllipticConstraint::Free],
        descriptor.clone(),
    )?;

    // Certificate: project away the elliptic factor (kernel dimension 1) and
    // pull back the even and odd Frobenius orbits of (t, t+1) in G_m^2.
    let projection = GroupHom::projection(descriptor.clone(), &[0, 1], &[])?;
    let target = projection.target().clone();
    let frob = FrobeniusOp::new(5, 5)?;
    let torus_pair = ProductPoint::new(
        TorusPoint::new(vec![t.clone(), t1.clone()])?,
        vec![],
        target.clone(),
    )?;
    let even_orbit = GrouplessFSet::new(
        ProductPoint::identity(target.clone()),
        vec![(torus_pair.clone(), 2)],
        frob,
    )?;
    let odd_orbit = GrouplessFSet::new(
        ProductPoint::identity(target.clone()),
        vec![(torus_pair.qth_power(5)?, 2)],
        frob,
    )?;
    let claimed = FSetUnion::new(
        vec![],
        vec![
            GeneralizedFSet::new(projection.clone(), even_orbit, gamma.clone())?,
            GeneralizedFSet::new(projection, odd_orbit, gamma.clone())?,
        ],
        vec![],
    )?;
    let certificate = Certificate {
        claimed,
        cap: DEFAULT_CAP,
        bound: DEFAULT_BOUND,
    };

    let mut points = BTreeMap::new();
    points.insert("Q".to_string(), q_point);

    Ok(Scenario {
        name: name.to_string(),
        descriptor,
        points,
        gamma,
        variety,
        certificate: Some(certificate),
        bound: DEFAULT_BOUND,
        cap: DEFAULT_CAP,
    })
}

/// The supersingular scenario: G = G_m^2 x E with E: y^2 = x^3 + 1 over F_5,
/// Gamma generated by Q = (t, t+1, P) for the generic point P = (t, s), and
/// X the line x2 = x1 + 1 times E.
pub fn example1() -> Result<Scenario> {
    line_scenario(
        "supersingular line intersection",
        CurveParams::from_i64(0, 1, 5)?,
        Poly::from_dense(&[1, 0, 0, 1], 5),
    )
}

/// The ordinary variant: E: y^2 = x^3 + x over F_5, tower s^2 = t^3 + t.
pub fn example2() -> Result<Scenario> {
    line_scenario(
        "ordinary line intersection",
        CurveParams::from_i64(1, 0, 5)?,
        Poly::from_dense(&[0, 1, 0, 1], 5),
    )
}

/// The relation polynomial for the recurrence demonstration: x^2 - 2x + 5,
/// the Frobenius relation of the ordinary curve.
pub fn example3_relation() -> IntPoly {
    IntPoly::quadratic(2, 5)
}

/// The split points behind the decomposition of the supersingular scenario:
/// Q1 = (t, t+1, O) carries the torus block, Q2 = (1, 1, P) the elliptic one.
pub fn example1_split_points(sc: &Scenario) -> Result<(ProductPoint, ProductPoint)> {
    let tower = sc.descriptor.tower().clone();
    let t = TowerElem::t(tower.clone());
    let t1 = TowerElem::from_poly(Poly::from_dense(&[1, 1], 5), tower.clone());
    let curve = sc.descriptor.curves()[0];
    let q1 = ProductPoint::new(
        TorusPoint::new(vec![t, t1])?,
        vec![ECPoint::infinity(curve)],
        sc.descriptor.clone(),
    )?;
    let q2 = ProductPoint::new(
        TorusPoint::new(vec![
            TowerElem::one(tower.clone()),
            TowerElem::one(tower.clone()),
        ])?,
        vec![ECPoint::generic(curve, &tower)?],
        sc.descriptor.clone(),
    )?;
    Ok((q1, q2))
}

/// Checks the two pointwise identities behind the decomposition of the
/// supersingular scenario, for n = 0..=n_max:
///   F^(2n)(Q1) + F^(4n)(Q2)     = 5^(2n)   * Q
///   F^(2n+1)(Q1) - F^(4n+2)(Q2) = 5^(2n+1) * Q
/// F^2 = [-5] is proven on the generic point; see `check_twist_identity`.
pub fn example1_twist_identities(n_max: u32) -> Result<(TwistIdentityReport, TwistIdentityReport)> {
    let sc = example1()?;
    let q = &sc.points["Q"];
    let (q1, q2) = example1_split_points(&sc)?;
    let h = IntPoly::from_i64(&[5, 0, 1]).unwrap();
    let even = check_twist_identity(
        q,
        &q1,
        &q2,
        |n| 2 * n,
        |n| 4 * n,
        1,
        |n| 25i64.pow(n),
        &h,
        n_max,
        5,
    )?;
    let odd = check_twist_identity(
        q,
        &q1,
        &q2,
        |n| 2 * n + 1,
        |n| 4 * n + 2,
        -1,
        |n| 5 * 25i64.pow(n),
        &h,
        n_max,
        5,
    )?;
    Ok((even, odd))
}
