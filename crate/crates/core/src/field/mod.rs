//! Exact coordinate-field arithmetic: `F_p`, `F_p[t]`, `F_p(t)` and the quadratic
//! tower `F_p(t)[s]/(s^2 - d(t))` that hosts every point in a scenario.

pub mod ext;
pub mod fp;
pub mod poly;
pub mod ratfunc;
pub mod tower;

pub use fp::FpElem;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use tower::{TowerElem, TowerField};
