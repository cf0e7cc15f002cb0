//! Exact arithmetic over Q: polynomials in one and two variables, resultants,
//! factorization and certified complex roots.

pub mod bivariate;
pub mod bpoly;
pub mod factor;
pub mod modp;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod upoly;

pub use bpoly::BPoly;
pub use upoly::{UPoly, Var};
