//! Group law and homomorphisms on products G = G_m^N x E^e with coordinates
//! in the tower field.

pub mod curve;
pub mod descriptor;
pub mod hom;
pub mod point;
pub mod smallcurve;

pub use curve::{CurveParams, ECPoint};
pub use descriptor::GroupDescriptor;
pub use hom::GroupHom;
pub use point::{ProductPoint, TorusPoint};
