//! Combinatorics of Schubert varieties in affine Grassmannians.
//!
//! Elements of the coroot lattice are handled as labelled affine Dynkin
//! diagrams. The crate computes lengths, Bruhat covers, order ideals,
//! Poincaré polynomials and the classification of palindromic Schubert
//! varieties, together with brute-force cross-checks.

pub mod bruhat;
pub mod error;
pub mod rootsys;
pub mod schubert;
pub mod series;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{build_root_system, LengthClass, Node, Root, RootSystem, TypeLabel};
