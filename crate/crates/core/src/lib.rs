//! Exact and high-precision tools for intersection homology, intersection
//! R-torsion of cones and suspensions, and the Bessel spectral data of
//! metric cones.

pub mod error;
pub mod bessel;
pub mod geometry;
pub mod chain;
pub mod linalg;
pub mod logexpr;
pub mod simplicial;
pub mod special;
pub mod stratified;

pub use error::{Error, Result};
