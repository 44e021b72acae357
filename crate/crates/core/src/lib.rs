//! Exact arithmetic for curves over small finite fields: point counts, zeta
//! functions, Riemann-Roch dimensions and non-special divisors.

pub mod constructions;
pub mod criteria;
pub mod curves;
pub mod error;
pub mod galois;
pub mod intpoly;
pub mod reference;
pub mod rrspaces;
pub mod semigroups;
pub mod suites;
pub mod tower;
pub mod zeta;

pub use error::{Error, Result};
