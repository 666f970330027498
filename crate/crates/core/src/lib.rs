pub mod error;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod upoly;

pub use error::{Error, Result};
pub mod bivar;
pub mod milnor;
pub mod family;
pub mod motives;
pub mod arcs;
pub mod symbol;

pub use symbol::Symbol;
pub mod fibre;
pub mod resolve;
pub mod zeta;
