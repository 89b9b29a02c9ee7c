//! Exact-arithmetic machinery for describing intersections of subvarieties
//! with finitely generated subgroups of semiabelian products G_m^N x E over
//! function-field towers in positive characteristic.
//!
//! The crate models groups of the form G = G_m^N x E_1 x ... x E_e with
//! coordinates in a fixed quadratic tower `L = F_p(t)[s]/(s^2 - d(t))`,
//! computes Frobenius relations and `Z[F]`-module spans, represents F-set
//! unions as finite certificates, and checks those certificates against a
//! brute-force intersection oracle at bounded height.

pub mod error;
pub mod examples;
pub mod factor;
pub mod field;
pub mod frob;
pub mod fset;
pub mod group;
pub mod intersect;
pub mod intpoly;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod scenario;
pub mod selftest;
pub mod variety;
pub mod zfmod;

pub use error::{Error, Result};
