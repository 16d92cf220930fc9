//! Exact algebra for rational maps of the sphere that share preimages.

pub mod constellation;
pub mod corpus;
pub mod error;
pub mod galois;
pub mod json;
pub mod maps;
pub mod orbifold;
pub mod orbits;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
