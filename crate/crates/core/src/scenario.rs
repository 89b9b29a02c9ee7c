//! Scenario files: a versioned JSON schema describing the ambient group,
//! named points, the subgroup, the variety, bounds, and an optional
//! certificate. Everything is validated on load; all cross-references must
//! resolve and all points must satisfy their defining equations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frob::FrobeniusOp;
use crate::fset::{FSetUnion, GeneralizedFSet, GrouplessFSet, PseudoGeneralizedFSet};
use crate::group::curve::{CurveParams, ECPoint};
use crate::group::descriptor::GroupDescriptor;
use crate::group::hom::GroupHom;
use crate::group::point::{ProductPoint, TorusPoint};
use crate::intersect::Certificate;
use crate::parse;
use crate::variety::{EllipticConstraint, Subvariety};
use crate::zfmod::{CoeffVector, Subgroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CurveSpec {
    pub a4: i64,
    pub a6: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum EcPointSpec {
    /// "O" for the point at infinity.
    Infinity(String),
    /// `[x, y]` affine coordinates as tower-element strings.
    Affine([String; 2]),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PointSpec {
    #[serde(default)]
    pub torus: Vec<String>,
    #[serde(default)]
    pub elliptic: Vec<EcPointSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum EllipticConstraintSpec {
    /// "free"
    Free(String),
    System {
        equations: Vec<String>,
        #[serde(default)]
        contains_infinity: bool,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct VarietySpec {
    #[serde(default)]
    pub torus_equations: Vec<String>,
    #[serde(default)]
    pub elliptic_constraints: Vec<EllipticConstraintSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HomTargetSpec {
    pub q: u64,
    pub torus_rank: usize,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HomSpec {
    pub torus_matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub elliptic_matrix: Vec<Vec<(i64, i64)>>,
    pub target: HomTargetSpec,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GrouplessSpec {
    pub base: PointSpec,
    #[serde(default)]
    pub summands: Vec<SummandSpec>,
    pub q: u64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SummandSpec {
    pub point: PointSpec,
    pub stride: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GeneralizedSpec {
    pub hom: String,
    pub image_set: GrouplessSpec,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PseudoSpec {
    pub offset: String,
    pub offset_witness: Vec<i64>,
    pub subgroup: Vec<String>,
    pub hom: String,
    pub image_set: GrouplessSpec,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateSpec {
    #[serde(default)]
    pub groupless: Vec<GrouplessSpec>,
    #[serde(default)]
    pub generalized: Vec<GeneralizedSpec>,
    #[serde(default)]
    pub pseudo: Vec<PseudoSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BoundsSpec {
    pub bound: i64,
    pub cap: u32,
}

fn default_tower_degree() -> u32 {
    2
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub name: String,
    pub p: u64,
    pub q: u64,
    pub tower_modulus: String,
    /// Degree of the tower extension over F_p(t). The format reserves the
    /// field for future degrees; only 2 is implemented.
    #[serde(default = "default_tower_degree")]
    pub tower_degree: u32,
    pub torus_rank: usize,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub points: BTreeMap<String, PointSpec>,
    pub gamma: Vec<String>,
    #[serde(default)]
    pub variety: VarietySpec,
    #[serde(default)]
    pub homs: BTreeMap<String, HomSpec>,
    #[serde(default)]
    pub certificate: Option<CertificateSpec>,
    pub bounds: BoundsSpec,
}

/// A fully validated scenario, ready to run.
pub struct Scenario {
    pub name: String,
    pub descriptor: Arc<GroupDescriptor>,
    pub points: BTreeMap<String, ProductPoint>,
    pub gamma: Subgroup,
    pub variety: Subvariety,
    pub certificate: Option<Certificate>,
    pub bound: i64,
    pub cap: u32,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Scenario::from_file(&file)
    }

    pub fn from_file(file: &ScenarioFile) -> Result<Scenario> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        if file.tower_degree != 2 {
            return Err(Error::Validation(format!(
                "tower degree {} is not implemented; only quadratic towers are",
                file.tower_degree
            )));
        }
        let p = file.p;
        let modulus = parse::parse_poly(&file.tower_modulus, p)?;
        let tower = crate::field::tower::TowerField::new(modulus)?;
        let curves = file
            .curves
            .iter()
            .map(|c| CurveParams::from_i64(c.a4, c.a6, p))
            .collect::<Result<Vec<_>>>()?;
        let descriptor = GroupDescriptor::new(file.q, file.torus_rank, curves, tower.clone())?;

        let mut points = BTreeMap::new();
        for (name, spec) in &file.points {
            let point = build_point(spec, &descriptor)?;
            points.insert(name.clone(), point);
        }

        let gamma_gens = file
            .gamma
            .iter()
            .map(|name| {
                points.get(name).cloned().ok_or_else(|| {
                    Error::Validation(format!("gamma references unknown point {name:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let gamma = Subgroup::new(gamma_gens, descriptor.clone())?;

        let torus_equations = file
            .variety
            .torus_equations
            .iter()
            .map(|eq| parse::parse_laurent(eq, file.torus_rank, p))
            .collect::<Result<Vec<_>>>()?;
        let mut elliptic_constraints = Vec::new();
        if file.variety.elliptic_constraints.is_empty() {
            elliptic_constraints = vec![EllipticConstraint::Free; descriptor.elliptic_count()];
        } else {
            for spec in &file.variety.elliptic_constraints {
                elliptic_constraints.push(match spec {
                    EllipticConstraintSpec::Free(word) => {
                        if word != "free" {
                            return Err(Error::Validation(format!(
                                "unknown elliptic constraint {word:?} (expected \"free\")"
                            )));
                        }
                        EllipticConstraint::Free
                    }
                    EllipticConstraintSpec::System {
                        equations,
                        contains_infinity,
                    } => EllipticConstraint::System {
                        equations: equations
                            .iter()
                            .map(|eq| parse::parse_ec_poly(eq, &tower))
                            .collect::<Result<Vec<_>>>()?,
                        contains_infinity: *contains_infinity,
                    },
                });
            }
        }
        let variety = Subvariety::new(torus_equations, elliptic_constraints, descriptor.clone())?;

        let mut homs = BTreeMap::new();
        for (name, spec) in &file.homs {
            let target_curves = spec
                .target
                .curves
                .iter()
                .map(|c| CurveParams::from_i64(c.a4, c.a6, p))
                .collect::<Result<Vec<_>>>()?;
            let target = GroupDescriptor::new(
                spec.target.q,
                spec.target.torus_rank,
                target_curves,
                tower.clone(),
            )?;
            let hom = GroupHom::new(
                spec.torus_matrix.clone(),
                spec.elliptic_matrix.clone(),
                descriptor.clone(),
                target,
                true,
            )?;
            homs.insert(name.clone(), hom);
        }

        let certificate = match &file.certificate {
            None => None,
            Some(spec) => Some(build_certificate(
                spec,
                &file.bounds,
                &descriptor,
                &points,
                &gamma,
                &homs,
            )?),
        };

        Ok(Scenario {
            name: file.name.clone(),
            descriptor,
            points,
            gamma,
            variety,
            certificate,
            bound: file.bounds.bound,
            cap: file.bounds.cap,
        })
    }
}

fn build_point(spec: &PointSpec, descriptor: &Arc<GroupDescriptor>) -> Result<ProductPoint> {
    let tower = descriptor.tower();
    let torus_coords = spec
        .torus
        .iter()
        .map(|s| parse::parse_tower_elem(s, tower))
        .collect::<Result<Vec<_>>>()?;
    let elliptic = spec
        .elliptic
        .iter()
        .zip(descriptor.curves())
        .map(|(e, curve)| match e {
            EcPointSpec::Infinity(word) => {
                if word == "O" {
                    Ok(ECPoint::infinity(*curve))
                } else {
                    Err(Error::Validation(format!(
                        "unknown elliptic point literal {word:?} (expected \"O\")"
                    )))
                }
            }
            EcPointSpec::Affine([x, y]) => ECPoint::affine(
                parse::parse_tower_elem(x, tower)?,
                parse::parse_tower_elem(y, tower)?,
                *curve,
            ),
        })
        .collect::<Result<Vec<_>>>()?;
    ProductPoint::new(TorusPoint::new(torus_coords)?, elliptic, descriptor.clone())
}

fn build_groupless(
    spec: &GrouplessSpec,
    descriptor: &Arc<GroupDescriptor>,
    p: u64,
) -> Result<GrouplessFSet> {
    let base = build_point(&spec.base, descriptor)?;
    let summands = spec
        .summands
        .iter()
        .map(|s| Ok((build_point(&s.point, descriptor)?, s.stride)))
        .collect::<Result<Vec<_>>>()?;
    GrouplessFSet::new(base, summands, FrobeniusOp::new(spec.q, p)?)
}

fn build_certificate(
    spec: &CertificateSpec,
    bounds: &BoundsSpec,
    descriptor: &Arc<GroupDescriptor>,
    points: &BTreeMap<String, ProductPoint>,
    gamma: &Subgroup,
    homs: &BTreeMap<String, GroupHom>,
) -> Result<Certificate> {
    let p = descriptor.prime();
    let groupless = spec
        .groupless
        .iter()
        .map(|g| build_groupless(g, descriptor, p))
        .collect::<Result<Vec<_>>>()?;
    let generalized = spec
        .generalized
        .iter()
        .map(|g| {
            let hom = homs.get(&g.hom).cloned().ok_or_else(|| {
                Error::Validation(format!("certificate references unknown hom {:?}", g.hom))
            })?;
            let image_set = build_groupless(&g.image_set, hom.target(), p)?;
            GeneralizedFSet::new(hom, image_set, gamma.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let pseudo = spec
        .pseudo
        .iter()
        .map(|g| {
            let hom = homs.get(&g.hom).cloned().ok_or_else(|| {
                Error::Validation(format!("certificate references unknown hom {:?}", g.hom))
            })?;
            let offset = points.get(&g.offset).cloned().ok_or_else(|| {
                Error::Validation(format!(
                    "certificate references unknown point {:?}",
                    g.offset
                ))
            })?;
            let subgroup_gens = g
                .subgroup
                .iter()
                .map(|name| {
                    points.get(name).cloned().ok_or_else(|| {
                        Error::Validation(format!("certificate references unknown point {name:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let subgroup = Subgroup::new(subgroup_gens, descriptor.clone())?;
            let image_set = build_groupless(&g.image_set, hom.target(), p)?;
            PseudoGeneralizedFSet::new(
                offset,
                gamma,
                CoeffVector(g.offset_witness.clone()),
                subgroup,
                hom,
                image_set,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        claimed: FSetUnion::new(groupless, generalized, pseudo)?,
        cap: bounds.cap,
        bound: bounds.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_json() -> String {
        r#"{
            "schema_version": 1,
            "name": "line in the torus",
            "p": 5,
            "q": 5,
            "tower_modulus": "t^3 + 1",
            "torus_rank": 2,
            "curves": [],
            "points": {
                "Q": {"torus": ["t", "t + 1"]}
            },
            "gamma": ["Q"],
            "variety": {"torus_equations": ["x2 - x1 - 1"]},
            "bounds": {"bound": 10, "cap": 3}
        }"#
        .to_string()
    }

    #[test]
    fn minimal_scenario_loads() {
        let sc = Scenario::from_json(&minimal_json()).unwrap();
        assert_eq!(sc.gamma.rank(), 1);
        assert_eq!(sc.descriptor.torus_rank(), 2);
        assert_eq!(sc.bound, 10);
        let result =
            crate::intersect::brute_intersect(&sc.variety, &sc.gamma, 10, 1000, 1).unwrap();
        let cs: Vec<i64> = result.witnesses.iter().map(|(c, _)| c.0[0]).collect();
        assert_eq!(cs, vec![1, 5]);
    }

    #[test]
    fn bad_references_rejected() {
        let text = minimal_json().replace("\"gamma\": [\"Q\"]", "\"gamma\": [\"R\"]");
        assert!(matches!(
            Scenario::from_json(&text),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn off_curve_point_rejected() {
        let text = r#"{
            "schema_version": 1,
            "name": "bad point",
            "p": 5,
            "q": 5,
            "tower_modulus": "t^3 + 1",
            "torus_rank": 0,
            "curves": [{"a4": 0, "a6": 1}],
            "points": {"P": {"elliptic": [["t", "t"]]}},
            "gamma": ["P"],
            "bounds": {"bound": 3, "cap": 2}
        }"#;
        assert!(matches!(
            Scenario::from_json(text),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn wrong_schema_version_rejected() {
        let text = minimal_json().replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(
            Scenario::from_json(&text),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn unsupported_tower_degree_rejected() {
        let text = minimal_json().replace(
            "\"tower_modulus\"",
            "\"tower_degree\": 3, \"tower_modulus\"",
        );
        assert!(matches!(
            Scenario::from_json(&text),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn generic_point_scenario_loads() {
        let text = r#"{
            "schema_version": 1,
            "name": "with elliptic part",
            "p": 5,
            "q": 5,
            "tower_modulus": "t^3 + 1",
            "torus_rank": 2,
            "curves": [{"a4": 0, "a6": 1}],
            "points": {
                "Q": {"torus": ["t", "t + 1"], "elliptic": [["t", "s"]]},
                "O": {"torus": ["1", "1"], "elliptic": ["O"]}
            },
            "gamma": ["Q"],
            "variety": {
                "torus_equations": ["x2 - x1 - 1"],
                "elliptic_constraints": ["free"]
            },
            "bounds": {"bound": 6, "cap": 2}
        }"#;
        let sc = Scenario::from_json(text).unwrap();
        assert!(sc.points["O"].is_identity());
        let result = crate::intersect::brute_intersect(&sc.variety, &sc.gamma, 6, 1000, 1).unwrap();
        let cs: Vec<i64> = result.witnesses.iter().map(|(c, _)| c.0[0]).collect();
        assert_eq!(cs, vec![1, 5]);
    }
}
