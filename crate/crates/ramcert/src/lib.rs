//! ramcert: exact certificates for chromatic and Ramsey-type lower bounds
//! via the cohomology of polyhedral test complexes.
//!
//! The library builds cell complexes of vertex maps between simplicial
//! complexes, computes reduced cohomology ranks over prime fields with
//! exact sparse linear algebra, and turns vanishing ranges into
//! machine-checkable certificates. Brute-force oracles cross-validate
//! every certified claim at desk scale.

pub mod bitset;
pub mod complexes;
pub mod criterion;
pub mod error;
pub mod gfp_homology;
pub mod oracles;
pub mod polytopal;
pub mod selfcheck;

pub use bitset::VertexSet;
pub use error::{Error, Result};
