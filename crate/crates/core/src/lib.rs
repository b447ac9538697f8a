//! Exact Ehrhart polynomials of lattice polytopes, closed forms for smooth
//! Fano polytopes in dimensions two to five, and certification of where the
//! Ehrhart roots lie relative to the line `Re z = -1/2`.
//!
//! Everything here is pure computation over arbitrary-precision integers and
//! rationals; file formats and the command line live in the companion crate.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod counting;
pub mod formulas;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod rootcert;

pub use geometry::{FVector, GeometryError, Halfspace, LatticeVector, Polytope};
pub use poly::RationalPolynomial;
