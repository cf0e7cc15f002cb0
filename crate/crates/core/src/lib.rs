pub mod algebra;
pub mod arakelov;
pub mod divisor;
pub mod error;
pub mod explore;
pub mod pairing;
pub mod parse;
pub mod quadrature;
pub mod residue;
pub mod verify;

pub use error::{Error, Result};
