//! Exact integral lattice toolkit for even hyperbolic 3-elementary lattices
//! embedded in the K3 lattice, and for the fixed loci of order-3
//! non-symplectic automorphisms acting trivially on them.
//!
//! Everything is computed with arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate.

pub mod classification;
pub mod error;
pub mod fixed_locus;
pub mod isometry;
pub mod lattice;
pub mod linalg;
pub mod named;

pub use error::{Error, Result};
pub use lattice::Lattice;
pub use linalg::{IntMatrix, RatMatrix};
