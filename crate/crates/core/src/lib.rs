//! Verification toolkit for integral affine spheres built from toric
//! data.
//!
//! From a complete unimodular fan and a strictly convex integral PL
//! function the crate constructs the boundary sphere of the dual
//! polytope with its polyhedral structure, computes vertex covector
//! frames, monodromy transports, and the radiance obstruction class,
//! and assembles the associated polarized logarithmic Hodge structure
//! together with its Gamma-style integral lattice.  Every combinatorial
//! quantity is cross-checked against smooth toric intersection theory.

pub mod cnum;
pub mod error;
pub mod gamma;
pub mod lattice;
pub mod linalg;
pub mod plh;
pub mod radiance;
pub mod sphere;
pub mod toric;

pub use error::{Error, Result};
pub use linalg::{Int, Rat};
